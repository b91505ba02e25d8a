#include "bisimlab/trees.hpp"

#include "bisimlab/error.hpp"

#include <algorithm>

namespace bisimlab
{

std::string seq_to_string( const Seq& s )
{
    std::string out = "<";
    for ( std::size_t i = 0; i < s.size(); ++i )
    {
        if ( i > 0 )
            out += ',';
        out += std::to_string( s[ i ] );
    }
    return out + ">";
}

FiniteTree::FiniteTree( std::set<Seq> nodes ) : _nodes{ std::move( nodes ) }
{
    if ( !_nodes.contains( Seq{} ) )
        fail( ErrorKind::Validation, "tree does not contain the root ε" );
    for ( const Seq& s : _nodes )
    {
        _children.try_emplace( s );
        if ( s.empty() )
            continue;
        Seq parent( s.begin(), s.end() - 1 );
        if ( !_nodes.contains( parent ) )
            fail( ErrorKind::Validation, "tree is not prefix-closed: " + seq_to_string( s ) + " lacks its parent" );
        _children[ parent ].push_back( s.back() );
    }
    // std::set iterates lexicographically, so every child list is already ascending.
}

const std::vector<Nat>& FiniteTree::children( const Seq& s ) const
{
    auto it = _children.find( s );
    if ( it == _children.end() )
        fail( ErrorKind::Domain, seq_to_string( s ) + " is not a node of the tree" );
    return it->second;
}

Children LazyTree::children( const Seq& s, std::size_t bound ) const
{
    if ( !contains( s ) )
        fail( ErrorKind::Domain, seq_to_string( s ) + " is not a node of the tree" );
    return _generator( s, bound );
}

FiniteTree tree_from_order( const ExplicitOrder& o )
{
    if ( !validate_linear_order( o ) )
        fail( ErrorKind::Validation, "not a strict linear order" );

    std::set<Seq> nodes{ Seq{} };
    std::vector<Seq> stack{ Seq{} };
    while ( !stack.empty() )
    {
        Seq s = std::move( stack.back() );
        stack.pop_back();
        for ( Nat x : o.carrier )
        {
            if ( !s.empty() && !o.less( x, s.back() ) )
                continue;
            Seq child = s;
            child.push_back( x );
            nodes.insert( child );
            stack.push_back( std::move( child ) );
        }
    }
    return FiniteTree( std::move( nodes ) );
}

namespace
{

std::optional<std::vector<Element>> decode_seq( const OrderDescriptor& d, const Seq& s )
{
    std::vector<Element> out;
    out.reserve( s.size() );
    for ( Nat code : s )
    {
        auto e = element_from_code( d, code );
        if ( !e )
            return std::nullopt;
        out.push_back( *e );
    }
    return out;
}

bool descriptor_member( const OrderDescriptor& d, const Seq& s )
{
    auto elems = decode_seq( d, s );
    if ( !elems )
        return false;
    for ( std::size_t j = 1; j < elems->size(); ++j )
        if ( !precedes( d, ( *elems )[ j ], ( *elems )[ j - 1 ] ) )
            return false;
    return true;
}

Children descriptor_children( const OrderDescriptor& d, const Seq& s, std::size_t bound )
{
    Children out;
    if ( s.empty() )
    {
        for ( Element e : enumerate_elements( d, bound ) )
            out.items.push_back( element_code( d, e ) );
        auto size = d.size();
        out.exhaustive = size && *size <= bound;
        return out;
    }
    Element last = *element_from_code( d, s.back() );
    OrderDescriptor below = downset( d, last );
    for ( Element e : enumerate_elements( below, bound ) )
        out.items.push_back( element_code( d, lift_from_downset( d, last, e ) ) );
    auto size = below.size();
    out.exhaustive = size && *size <= bound;
    return out;
}

} // namespace

LazyTree lazy_tree_from_descriptor( const OrderDescriptor& d )
{
    return LazyTree(
            d, [ d ]( const Seq& s ) { return descriptor_member( d, s ); },
            [ d ]( const Seq& s, std::size_t bound ) { return descriptor_children( d, s, bound ); } );
}

bool membership_local( const RelationPatch& patch, const Seq& s )
{
    for ( std::size_t j = 1; j < s.size(); ++j )
        if ( !patch.get( s[ j ], s[ j - 1 ] ) )
            return false;
    return true;
}

LazyTree lazy_tree_from_patch( const RelationPatch& patch )
{
    auto generator = [ patch ]( const Seq& s, std::size_t bound ) {
        Children out;
        if ( s.empty() )
        {
            // every ⟨n⟩, n ∈ ℕ, is a node
            for ( Nat n = 0; n < bound; ++n )
                out.items.push_back( n );
            return out;
        }
        out.exhaustive = true;
        for ( Nat n : patch.support() )
        {
            if ( !patch.get( n, s.back() ) )
                continue;
            if ( out.items.size() == bound )
            {
                out.exhaustive = false;
                break;
            }
            out.items.push_back( n );
        }
        return out;
    };
    return LazyTree( patch, [ patch ]( const Seq& s ) { return membership_local( patch, s ); }, generator );
}

LazyTree lazy_tree_from_finite( const FiniteTree& t )
{
    auto generator = [ t ]( const Seq& s, std::size_t bound ) {
        const auto& all = t.children( s );
        Children out;
        out.exhaustive = all.size() <= bound;
        out.items.assign( all.begin(), all.begin() + static_cast<std::ptrdiff_t>( std::min( bound, all.size() ) ) );
        return out;
    };
    return LazyTree( t, [ t ]( const Seq& s ) { return t.contains( s ); }, generator );
}

std::string to_string( const RankValue& r )
{
    return r.top ? "Top" : r.ord.to_string();
}

namespace
{

Nat finite_rank( const FiniteTree& t, const Seq& s )
{
    Nat best = 0;
    Seq child = s;
    child.push_back( 0 );
    for ( Nat n : t.children( s ) )
    {
        child.back() = n;
        best = std::max( best, finite_rank( t, child ) + 1 );
    }
    return best;
}

// Rank of ⟨n⟩ in T_R for a finite-support patch: longest descent along
// n → m with R(m, n); nullopt (Top) once a cycle is reachable.
class PatchRanks
{
    const RelationPatch& _patch;
    std::set<Nat> _support;
    std::map<Nat, std::optional<Nat>> _memo;
    std::set<Nat> _on_stack;

public:
    explicit PatchRanks( const RelationPatch& patch ) : _patch{ patch }, _support{ patch.support() } {}

    const std::set<Nat>& support() const { return _support; }

    std::optional<Nat> of( Nat n )
    {
        if ( auto it = _memo.find( n ); it != _memo.end() )
            return it->second;
        if ( _on_stack.contains( n ) )
            return std::nullopt;
        _on_stack.insert( n );
        std::optional<Nat> best = 0;
        for ( Nat m : _support )
        {
            if ( !_patch.get( m, n ) )
                continue;
            auto r = of( m );
            if ( !r )
            {
                best = std::nullopt;
                break;
            }
            best = std::max( *best, *r + 1 );
        }
        _on_stack.erase( n );
        _memo[ n ] = best;
        return best;
    }
};

RankValue patch_rank( const RelationPatch& patch, const Seq& s )
{
    PatchRanks ranks( patch );
    if ( !s.empty() )
    {
        auto r = ranks.of( s.back() );
        return r ? RankValue::of( Ordinal::finite( *r ) ) : RankValue::infinite();
    }
    Nat best = 1; // ⟨n⟩ for n outside the support is a leaf
    for ( Nat n : ranks.support() )
    {
        auto r = ranks.of( n );
        if ( !r )
            return RankValue::infinite();
        best = std::max( best, *r + 1 );
    }
    return RankValue::of( Ordinal::finite( best ) );
}

} // namespace

RankValue rank( const FiniteTree& t, const Seq& s )
{
    if ( !t.contains( s ) )
        fail( ErrorKind::Domain, seq_to_string( s ) + " is not a node of the tree" );
    return RankValue::of( Ordinal::finite( finite_rank( t, s ) ) );
}

RankValue rank( const LazyTree& t, const Seq& s )
{
    if ( !t.contains( s ) )
        fail( ErrorKind::Domain, seq_to_string( s ) + " is not a node of the tree" );
    const auto& origin = t.origin();
    if ( const auto* tree = std::get_if<FiniteTree>( &origin ) )
        return rank( *tree, s );
    if ( const auto* patch = std::get_if<RelationPatch>( &origin ) )
        return patch_rank( *patch, s );
    if ( std::holds_alternative<OpaqueOrigin>( origin ) )
        fail( ErrorKind::Unsupported, "rank is not available for " + std::get<OpaqueOrigin>( origin ).description );

    const auto& d = std::get<OrderDescriptor>( origin );
    OrderClass cls = s.empty() ? classify( d ) : classify( downset( d, *element_from_code( d, s.back() ) ) );
    return cls.well_order ? RankValue::of( cls.ordinal ) : RankValue::infinite();
}

bool operator==( const CanonicalTree& a, const CanonicalTree& b )
{
    return a.children == b.children;
}

bool operator<( const CanonicalTree& a, const CanonicalTree& b )
{
    return std::lexicographical_compare( a.children.begin(), a.children.end(), b.children.begin(), b.children.end() );
}

std::string CanonicalTree::to_string() const
{
    std::string out = "{";
    for ( std::size_t i = 0; i < children.size(); ++i )
    {
        if ( i > 0 )
            out += ',';
        out += children[ i ].to_string();
    }
    return out + "}";
}

namespace
{

void add_canonical_nodes( const CanonicalTree& form, Seq& at, std::set<Seq>& nodes )
{
    nodes.insert( at );
    for ( std::size_t i = 0; i < form.children.size(); ++i )
    {
        at.push_back( i );
        add_canonical_nodes( form.children[ i ], at, nodes );
        at.pop_back();
    }
}

} // namespace

FiniteTree CanonicalTree::to_tree() const
{
    std::set<Seq> nodes;
    Seq at;
    add_canonical_nodes( *this, at, nodes );
    return FiniteTree( std::move( nodes ) );
}

CanonicalTree canonical_form( const FiniteTree& t, const Seq& s )
{
    CanonicalTree out;
    Seq child = s;
    child.push_back( 0 );
    for ( Nat n : t.children( s ) )
    {
        child.back() = n;
        out.children.push_back( canonical_form( t, child ) );
    }
    std::ranges::sort( out.children, []( const auto& a, const auto& b ) { return a < b; } );
    auto dup = std::unique( out.children.begin(), out.children.end() );
    out.children.erase( dup, out.children.end() );
    return out;
}

CanonicalTree canonical_form( const FiniteTree& t )
{
    return canonical_form( t, Seq{} );
}

namespace
{

void expand_node( const FiniteTree& t, Nat k, Seq& original, Seq& expanded, std::set<Seq>& out )
{
    out.insert( expanded );
    for ( Nat n : t.children( original ) )
    {
        original.push_back( n );
        for ( Nat i = 0; i < k; ++i )
        {
            expanded.push_back( n * k + i );
            expand_node( t, k, original, expanded, out );
            expanded.pop_back();
        }
        original.pop_back();
    }
}

} // namespace

FiniteTree omega_expansion_truncated( const FiniteTree& t, Nat k )
{
    if ( k == 0 )
        fail( ErrorKind::Domain, "ω-expansion truncation index must be at least 1" );
    std::set<Seq> nodes;
    Seq original, expanded;
    expand_node( t, k, original, expanded, nodes );
    return FiniteTree( std::move( nodes ) );
}

} // namespace bisimlab
