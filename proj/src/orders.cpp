#include "bisimlab/orders.hpp"

#include "bisimlab/error.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <unordered_set>

namespace bisimlab
{

ExplicitOrder ExplicitOrder::chain( std::vector<Nat> carrier )
{
    std::ranges::sort( carrier );
    ExplicitOrder order{ carrier, {} };
    for ( std::size_t i = 0; i < carrier.size(); ++i )
        for ( std::size_t j = i + 1; j < carrier.size(); ++j )
            order.pairs.insert( { carrier[ i ], carrier[ j ] } );
    return order;
}

bool validate_linear_order( const ExplicitOrder& rel )
{
    std::unordered_set<Nat> elems;
    for ( Nat x : rel.carrier )
        if ( !elems.insert( x ).second )
            fail( ErrorKind::Data, "duplicate carrier element " + std::to_string( x ) );
    for ( auto [ a, b ] : rel.pairs )
        if ( !elems.contains( a ) || !elems.contains( b ) )
            fail( ErrorKind::Data,
                  "pair (" + std::to_string( a ) + "," + std::to_string( b ) + ") outside the carrier" );

    for ( Nat a : rel.carrier )
        if ( rel.less( a, a ) )
            return false;
    for ( std::size_t i = 0; i < rel.carrier.size(); ++i )
        for ( std::size_t j = i + 1; j < rel.carrier.size(); ++j )
            if ( rel.less( rel.carrier[ i ], rel.carrier[ j ] ) == rel.less( rel.carrier[ j ], rel.carrier[ i ] ) )
                return false;
    for ( auto [ a, b ] : rel.pairs )
        for ( Nat c : rel.carrier )
            if ( rel.less( b, c ) && !rel.less( a, c ) )
                return false;
    return true;
}

bool RelationPatch::get( Nat a, Nat b ) const
{
    auto it = _bits.find( { a, b } );
    return it != _bits.end() && it->second;
}

std::set<Nat> RelationPatch::support() const
{
    std::set<Nat> out;
    for ( const auto& [ pair, bit ] : _bits )
        if ( bit )
        {
            out.insert( pair.first );
            out.insert( pair.second );
        }
    return out;
}

IndexedRelation IndexedRelation::from_patch( RelationPatch patch )
{
    IndexedRelation r;
    r._patch = std::move( patch );
    return r;
}

IndexedRelation IndexedRelation::from_order( ExplicitOrder order )
{
    IndexedRelation r;
    r._order = std::move( order );
    return r;
}

std::optional<Nat> IndexedRelation::domain_size() const
{
    if ( _order )
        return _order->carrier.size();
    return std::nullopt;
}

bool IndexedRelation::in_domain( Nat n ) const
{
    auto size = domain_size();
    return !size || n < *size;
}

bool IndexedRelation::operator()( Nat n, Nat m ) const
{
    if ( !in_domain( n ) || !in_domain( m ) )
        fail( ErrorKind::Domain,
              "pair (" + std::to_string( n ) + "," + std::to_string( m ) + ") outside the relation's domain" );
    if ( _patch )
        return _patch->get( n, m );
    return _order->less( _order->carrier[ n ], _order->carrier[ m ] );
}

bool InterleavedSum::in_domain( Nat n ) const
{
    return n % 2 == 0 ? _evens.in_domain( n / 2 ) : _odds.in_domain( ( n - 1 ) / 2 );
}

bool InterleavedSum::operator()( Nat n, Nat m ) const
{
    if ( !in_domain( n ) || !in_domain( m ) )
        fail( ErrorKind::Domain,
              "pair (" + std::to_string( n ) + "," + std::to_string( m ) + ") outside the sum's domain" );
    bool n_even = n % 2 == 0;
    bool m_even = m % 2 == 0;
    if ( n_even && !m_even )
        return true;
    if ( n_even && m_even )
        return _evens( n / 2, m / 2 );
    if ( !n_even && !m_even )
        return _odds( ( n - 1 ) / 2, ( m - 1 ) / 2 );
    return false;
}

ExplicitOrder InterleavedSum::to_explicit() const
{
    auto evens = _evens.domain_size();
    auto odds = _odds.domain_size();
    if ( !evens || !odds )
        fail( ErrorKind::Domain, "interleaved sum over an infinite domain has no explicit form" );

    ExplicitOrder out;
    for ( Nat i = 0; i < *evens; ++i )
        out.carrier.push_back( 2 * i );
    for ( Nat i = 0; i < *odds; ++i )
        out.carrier.push_back( 2 * i + 1 );
    for ( Nat a : out.carrier )
        for ( Nat b : out.carrier )
            if ( ( *this )( a, b ) )
                out.pairs.insert( { a, b } );
    return out;
}

InterleavedSum sum_interleave( IndexedRelation r, IndexedRelation r2 )
{
    return { std::move( r ), std::move( r2 ) };
}

std::string Ordinal::to_string() const
{
    return "w*" + std::to_string( m ) + "+" + std::to_string( k );
}

Atom Atom::fin( Nat k )
{
    if ( k == 0 )
        fail( ErrorKind::Domain, "Fin(0) is not an atom; use the empty descriptor" );
    return { Kind::Fin, k };
}

bool OrderDescriptor::is_finite() const
{
    return std::ranges::all_of( atoms, &Atom::is_finite );
}

std::optional<Nat> OrderDescriptor::size() const
{
    if ( !is_finite() )
        return std::nullopt;
    Nat total = 0;
    for ( const Atom& a : atoms )
        total += a.size;
    return total;
}

bool OrderDescriptor::has_omega_star() const
{
    return std::ranges::any_of( atoms, []( const Atom& a ) { return a.kind == Atom::Kind::OmegaStar; } );
}

std::string OrderDescriptor::to_string() const
{
    std::string out;
    for ( std::size_t i = 0; i < atoms.size(); ++i )
    {
        if ( i > 0 )
            out += '+';
        switch ( atoms[ i ].kind )
        {
        case Atom::Kind::Fin: out += std::to_string( atoms[ i ].size ); break;
        case Atom::Kind::Omega: out += "w"; break;
        case Atom::Kind::OmegaStar: out += "w*"; break;
        }
    }
    return out;
}

OrderDescriptor OrderDescriptor::parse( const std::string& text )
{
    OrderDescriptor d;
    if ( text.empty() )
        return d;

    std::size_t start = 0;
    while ( true )
    {
        std::size_t end = text.find( '+', start );
        std::string token = text.substr( start, end == std::string::npos ? std::string::npos : end - start );
        if ( token == "w" )
            d.atoms.push_back( Atom::omega() );
        else if ( token == "w*" )
            d.atoms.push_back( Atom::omega_star() );
        else
        {
            Nat k = 0;
            auto [ ptr, ec ] = std::from_chars( token.data(), token.data() + token.size(), k );
            if ( token.empty() || ec != std::errc{} || ptr != token.data() + token.size() || k == 0 )
                fail( ErrorKind::Data, "bad descriptor atom '" + token + "' in '" + text + "'" );
            d.atoms.push_back( Atom::fin( k ) );
        }
        if ( end == std::string::npos )
            break;
        start = end + 1;
    }
    return d;
}

OrderDescriptor descriptor_sum( const OrderDescriptor& d1, const OrderDescriptor& d2 )
{
    OrderDescriptor out = d1;
    out.atoms.insert( out.atoms.end(), d2.atoms.begin(), d2.atoms.end() );
    return out;
}

OrderDescriptor descriptor_normalize( const OrderDescriptor& d )
{
    // Both rewrites only look left, so one pass with a stack reaches the fixed point.
    OrderDescriptor out;
    for ( const Atom& a : d.atoms )
    {
        if ( !out.atoms.empty() && out.atoms.back().is_finite() )
        {
            if ( a.is_finite() )
            {
                out.atoms.back().size += a.size;
                continue;
            }
            if ( a.kind == Atom::Kind::Omega )
            {
                out.atoms.back() = a;
                continue;
            }
        }
        out.atoms.push_back( a );
    }
    return out;
}

namespace
{

Ordinal atom_type( const Atom& a )
{
    return a.kind == Atom::Kind::Fin ? Ordinal::finite( a.size ) : Ordinal::omega();
}

Nat atom_size( const Atom& a )
{
    return a.is_finite() ? a.size : std::numeric_limits<Nat>::max();
}

} // namespace

OrderClass classify( const OrderDescriptor& d )
{
    Ordinal sum;
    for ( const Atom& a : d.atoms )
    {
        if ( a.kind == Atom::Kind::OmegaStar )
            return OrderClass::non_wellorder( sum );
        sum = sum + atom_type( a );
    }
    return OrderClass::wellorder( sum );
}

bool is_element( const OrderDescriptor& d, Element e )
{
    return e.atom < d.atoms.size() && e.inner < atom_size( d.atoms[ e.atom ] );
}

bool precedes( const OrderDescriptor& d, Element a, Element b )
{
    if ( !is_element( d, a ) || !is_element( d, b ) )
        fail( ErrorKind::Domain, "comparison of a non-element" );
    if ( a.atom != b.atom )
        return a.atom < b.atom;
    if ( d.atoms[ a.atom ].kind == Atom::Kind::OmegaStar )
        return a.inner > b.inner;
    return a.inner < b.inner;
}

std::vector<Element> enumerate_elements( const OrderDescriptor& d, std::size_t bound )
{
    std::vector<Element> out;
    if ( d.atoms.empty() )
        return out;
    Nat longest = 0;
    for ( const Atom& a : d.atoms )
        longest = std::max( longest, atom_size( a ) );

    for ( Nat round = 0; round < longest && out.size() < bound; ++round )
        for ( std::size_t i = 0; i < d.atoms.size() && out.size() < bound; ++i )
            if ( round < atom_size( d.atoms[ i ] ) )
                out.push_back( { i, round } );
    return out;
}

Nat element_code( const OrderDescriptor& d, Element e )
{
    if ( !is_element( d, e ) )
        fail( ErrorKind::Domain, "element_code of a non-element" );
    Nat code = 0;
    for ( std::size_t i = 0; i < d.atoms.size(); ++i )
    {
        code += std::min( atom_size( d.atoms[ i ] ), e.inner );
        if ( i < e.atom && atom_size( d.atoms[ i ] ) > e.inner )
            ++code;
    }
    return code;
}

std::optional<Element> element_from_code( const OrderDescriptor& d, Nat code )
{
    std::vector<std::size_t> infinite;
    Nat longest_finite = 0;
    for ( std::size_t i = 0; i < d.atoms.size(); ++i )
    {
        if ( d.atoms[ i ].is_finite() )
            longest_finite = std::max( longest_finite, d.atoms[ i ].size );
        else
            infinite.push_back( i );
    }

    auto nth_in_round = [ & ]( Nat round, Nat idx ) -> Element {
        for ( std::size_t i = 0; i < d.atoms.size(); ++i )
            if ( round < atom_size( d.atoms[ i ] ) && idx-- == 0 )
                return { i, round };
        return {}; // unreachable: idx < count of the round
    };

    Nat before = 0;
    for ( Nat round = 0; round < longest_finite; ++round )
    {
        Nat count = 0;
        for ( const Atom& a : d.atoms )
            count += round < atom_size( a ) ? 1 : 0;
        if ( code < before + count )
            return nth_in_round( round, code - before );
        before += count;
    }
    if ( infinite.empty() )
        return std::nullopt;
    Nat rest = code - before;
    return Element{ infinite[ rest % infinite.size() ], longest_finite + rest / infinite.size() };
}

OrderDescriptor downset( const OrderDescriptor& d, Element e )
{
    if ( !is_element( d, e ) )
        fail( ErrorKind::Domain, "downset of a non-element" );
    OrderDescriptor out;
    out.atoms.assign( d.atoms.begin(), d.atoms.begin() + static_cast<std::ptrdiff_t>( e.atom ) );
    const Atom& home = d.atoms[ e.atom ];
    if ( home.kind == Atom::Kind::OmegaStar )
        out.atoms.push_back( Atom::omega_star() );
    else if ( e.inner > 0 )
        out.atoms.push_back( Atom::fin( e.inner ) );
    return out;
}

Element lift_from_downset( const OrderDescriptor& d, Element e, Element below )
{
    if ( below.atom < e.atom )
        return below;
    if ( d.atoms[ e.atom ].kind == Atom::Kind::OmegaStar )
        return { e.atom, e.inner + 1 + below.inner };
    return { e.atom, below.inner };
}

} // namespace bisimlab
