#include "bisimlab/mlts.hpp"

#include "bisimlab/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace bisimlab
{

namespace
{

StateSet full_set( std::size_t n )
{
    return n == 64 ? ~StateSet{ 0 } : ( StateSet{ 1 } << n ) - 1;
}

bool has( StateSet set, StateId s )
{
    return ( set >> s ) & 1U;
}

std::string set_to_string( StateSet set, const std::vector<std::string>& names )
{
    std::string out = "{";
    bool first = true;
    for ( StateId s = 0; s < names.size(); ++s )
        if ( has( set, s ) )
        {
            if ( !first )
                out += ',';
            out += names[ s ];
            first = false;
        }
    return out + "}";
}

void check_carrier_size( std::size_t n )
{
    if ( n > max_mlts_states )
        fail( ErrorKind::Resource, "MLTS carriers are limited to " + std::to_string( max_mlts_states ) + " states" );
}

} // namespace

Field::Field( std::size_t carrier_size, std::vector<StateSet> atoms )
        : _carrier_size{ carrier_size }, _atoms{ std::move( atoms ) }
{
    check_carrier_size( carrier_size );
    StateSet seen = 0;
    for ( StateSet a : _atoms )
    {
        if ( a == 0 || ( a & seen ) != 0 || ( a & ~full_set( carrier_size ) ) != 0 )
            fail( ErrorKind::Validation, "field atoms must be nonempty, disjoint subsets of the carrier" );
        seen |= a;
    }
    if ( seen != full_set( carrier_size ) )
        fail( ErrorKind::Validation, "field atoms must cover the carrier" );
    std::ranges::sort( _atoms );
}

Field Field::powerset( std::size_t carrier_size )
{
    std::vector<StateSet> atoms;
    for ( StateId s = 0; s < carrier_size; ++s )
        atoms.push_back( singleton( s ) );
    return { carrier_size, std::move( atoms ) };
}

Field Field::trivial( std::size_t carrier_size )
{
    if ( carrier_size == 0 )
        return { 0, {} };
    return { carrier_size, { full_set( carrier_size ) } };
}

Field Field::from_family( std::size_t carrier_size, const std::vector<StateSet>& family )
{
    std::set<StateSet> distinct( family.begin(), family.end() );
    for ( StateSet q : distinct )
        if ( ( q & ~full_set( carrier_size ) ) != 0 )
            fail( ErrorKind::Validation, "family member outside the carrier" );
    Field generated = field_closure( carrier_size, family );
    std::size_t k = generated.atoms().size();
    if ( k >= 63 || distinct.size() != ( std::size_t{ 1 } << k ) )
        fail( ErrorKind::Validation, "family is not a field: it is not closed under complement and union" );
    return generated;
}

StateSet Field::carrier() const
{
    return full_set( _carrier_size );
}

bool Field::contains( StateSet q ) const
{
    if ( ( q & ~carrier() ) != 0 )
        return false;
    return std::ranges::all_of( _atoms, [ q ]( StateSet a ) { return ( a & q ) == 0 || ( a & q ) == a; } );
}

std::vector<StateSet> Field::members() const
{
    if ( _atoms.size() > 20 )
        fail( ErrorKind::Resource, "field too large to enumerate" );
    std::vector<StateSet> out;
    for ( std::size_t mask = 0; mask < ( std::size_t{ 1 } << _atoms.size() ); ++mask )
    {
        StateSet q = 0;
        for ( std::size_t i = 0; i < _atoms.size(); ++i )
            if ( ( mask >> i ) & 1U )
                q |= _atoms[ i ];
        out.push_back( q );
    }
    std::ranges::sort( out );
    return out;
}

bool Field::includes( const Field& other ) const
{
    return other._carrier_size == _carrier_size &&
           std::ranges::all_of( other._atoms, [ this ]( StateSet a ) { return contains( a ); } );
}

Field field_closure( std::size_t carrier_size, const std::vector<StateSet>& generators )
{
    check_carrier_size( carrier_size );
    if ( carrier_size == 0 )
        return Field::trivial( 0 );
    std::vector<StateSet> atoms{ full_set( carrier_size ) };
    for ( StateSet g : generators )
    {
        if ( ( g & ~full_set( carrier_size ) ) != 0 )
            fail( ErrorKind::Validation, "generator outside the carrier" );
        std::vector<StateSet> next;
        for ( StateSet a : atoms )
        {
            if ( ( a & g ) != 0 )
                next.push_back( a & g );
            if ( ( a & ~g ) != 0 )
                next.push_back( a & ~g );
        }
        atoms = std::move( next );
    }
    return { carrier_size, std::move( atoms ) };
}

StateRelation identity_relation( std::size_t n )
{
    StateRelation r( n );
    for ( StateId s = 0; s < n; ++s )
        r[ s ] = singleton( s );
    return r;
}

StateRelation full_relation( std::size_t n )
{
    return StateRelation( n, full_set( n ) );
}

bool is_symmetric( const StateRelation& r )
{
    for ( StateId s = 0; s < r.size(); ++s )
        for ( StateId t = 0; t < r.size(); ++t )
            if ( has( r[ s ], t ) != has( r[ t ], s ) )
                return false;
    return true;
}

StateRelation agreement_relation( const Field& f )
{
    StateRelation r( f.carrier_size(), 0 );
    for ( StateSet a : f.atoms() )
        for ( StateId s = 0; s < f.carrier_size(); ++s )
            if ( has( a, s ) )
                r[ s ] = a;
    return r;
}

StateRelation partition_relation( const Partition& p )
{
    StateRelation r( p.size(), 0 );
    for ( StateId s = 0; s < p.size(); ++s )
        for ( StateId t = 0; t < p.size(); ++t )
            if ( p[ s ] == p[ t ] )
                r[ s ] |= singleton( t );
    return r;
}

bool relation_included( const StateRelation& a, const StateRelation& b )
{
    if ( a.size() != b.size() )
        return false;
    for ( StateId s = 0; s < a.size(); ++s )
        if ( ( a[ s ] & ~b[ s ] ) != 0 )
            return false;
    return true;
}

FiniteMlts::FiniteMlts( std::vector<std::string> carrier, std::vector<std::string> labels, Field field,
                        std::vector<std::vector<StateSet>> trans )
        : _carrier{ std::move( carrier ) }, _labels{ std::move( labels ) }, _field{ std::move( field ) },
          _trans{ std::move( trans ) }
{
    check_carrier_size( _carrier.size() );
    if ( _field.carrier_size() != _carrier.size() )
        fail( ErrorKind::Validation, "field is over a carrier of a different size" );
    if ( _trans.size() != _labels.size() )
        fail( ErrorKind::Validation, "one transition map per label is required" );
    for ( LabelId a = 0; a < _labels.size(); ++a )
    {
        if ( _trans[ a ].size() != _carrier.size() )
            fail( ErrorKind::Validation, "transition map for '" + _labels[ a ] + "' must cover every state" );
        for ( StateId s = 0; s < _carrier.size(); ++s )
            if ( !_field.contains( _trans[ a ][ s ] ) )
                fail( ErrorKind::Validation, "T_" + _labels[ a ] + "(" + _carrier[ s ] + ") = " +
                                                     set_to_string( _trans[ a ][ s ], _carrier ) +
                                                     " is not a measurable set" );
    }
    for ( LabelId a = 0; a < _labels.size(); ++a )
        for ( StateSet q : _field.atoms() )
            if ( !_field.contains( pre_image( *this, a, q ) ) )
                fail( ErrorKind::Validation, "field is not stable under pre_" + _labels[ a ] + ": pre of " +
                                                     set_to_string( q, _carrier ) + " is not measurable" );
}

namespace
{

std::vector<std::vector<StateSet>> lts_transition_sets( const Lts& l )
{
    std::vector<std::vector<StateSet>> trans( l.num_labels(), std::vector<StateSet>( l.num_states(), 0 ) );
    for ( LabelId a = 0; a < l.num_labels(); ++a )
        for ( StateId s = 0; s < l.num_states(); ++s )
            for ( StateId t : l.successors( a, s ) )
                trans[ a ][ s ] |= singleton( t );
    return trans;
}

StateSet pre_raw( const std::vector<StateSet>& trans_a, StateSet q )
{
    StateSet out = 0;
    for ( StateId s = 0; s < trans_a.size(); ++s )
        if ( ( trans_a[ s ] & q ) != 0 )
            out |= singleton( s );
    return out;
}

// Least field containing `seed` that is stable under every pre_a.
Field stable_closure( std::size_t n, const std::vector<std::vector<StateSet>>& trans, std::vector<StateSet> seed )
{
    Field current = field_closure( n, seed );
    while ( true )
    {
        std::vector<StateSet> grown = seed;
        for ( StateSet atom : current.atoms() )
            for ( const auto& trans_a : trans )
                grown.push_back( pre_raw( trans_a, atom ) );
        Field next = field_closure( n, grown );
        if ( next == current )
            return current;
        current = std::move( next );
        seed = current.atoms();
    }
}

} // namespace

FiniteMlts FiniteMlts::from_lts( const Lts& l )
{
    check_carrier_size( l.num_states() );
    return { l.state_names(), l.labels(), Field::powerset( l.num_states() ), lts_transition_sets( l ) };
}

FiniteMlts FiniteMlts::from_lts( const Lts& l, const std::vector<StateSet>& generators )
{
    check_carrier_size( l.num_states() );
    auto trans = lts_transition_sets( l );
    std::vector<StateSet> seed = generators;
    for ( const auto& trans_a : trans )
        seed.insert( seed.end(), trans_a.begin(), trans_a.end() );
    Field field = stable_closure( l.num_states(), trans, seed );
    return { l.state_names(), l.labels(), std::move( field ), std::move( trans ) };
}

LabelId FiniteMlts::label( const std::string& name ) const
{
    auto it = std::ranges::find( _labels, name );
    if ( it == _labels.end() )
        fail( ErrorKind::Domain, "unknown label '" + name + "'" );
    return static_cast<LabelId>( it - _labels.begin() );
}

StateId FiniteMlts::state( const std::string& name ) const
{
    auto it = std::ranges::find( _carrier, name );
    if ( it == _carrier.end() )
        fail( ErrorKind::Domain, "unknown state '" + name + "'" );
    return static_cast<StateId>( it - _carrier.begin() );
}

Lts FiniteMlts::underlying_lts() const
{
    Lts l( _carrier, _labels );
    for ( LabelId a = 0; a < _labels.size(); ++a )
        for ( StateId s = 0; s < _carrier.size(); ++s )
            for ( StateId t = 0; t < _carrier.size(); ++t )
                if ( has( _trans[ a ][ s ], t ) )
                    l.add_transition( a, s, t );
    return l;
}

FiniteMlts mlts_from_trees( const std::vector<FiniteTree>& trees )
{
    std::vector<std::string> names;
    std::map<std::pair<std::size_t, Seq>, StateId> index;
    for ( std::size_t i = 0; i < trees.size(); ++i )
        for ( const Seq& s : trees[ i ].nodes() )
        {
            index.emplace( std::make_pair( i, s ), names.size() );
            names.push_back( "T" + std::to_string( i ) + ":" + seq_to_string( s ) );
        }
    check_carrier_size( names.size() );

    std::vector<std::vector<StateSet>> trans( 1, std::vector<StateSet>( names.size(), 0 ) );
    for ( std::size_t i = 0; i < trees.size(); ++i )
        for ( const Seq& s : trees[ i ].nodes() )
        {
            Seq child = s;
            child.push_back( 0 );
            for ( Nat n : trees[ i ].children( s ) )
            {
                child.back() = n;
                trans[ 0 ][ index.at( { i, s } ) ] |= singleton( index.at( { i, child } ) );
            }
        }
    std::size_t n = names.size();
    return { std::move( names ), { tree_label }, Field::powerset( n ), std::move( trans ) };
}

StateId tree_state( const FiniteMlts& m, std::size_t tree, const Seq& s )
{
    return m.state( "T" + std::to_string( tree ) + ":" + seq_to_string( s ) );
}

StateSet pre_image( const FiniteMlts& m, LabelId label, StateSet q )
{
    if ( label >= m.labels().size() )
        fail( ErrorKind::Domain, "unknown label index" );
    StateSet out = 0;
    for ( StateId s = 0; s < m.size(); ++s )
        if ( ( m.transitions( label, s ) & q ) != 0 )
            out |= singleton( s );
    return out;
}

StateSet pre_image( const FiniteMlts& m, const std::string& label, StateSet q )
{
    return pre_image( m, m.label( label ), q );
}

Field r_closed_field( const FiniteMlts& m, const StateRelation& r )
{
    if ( r.size() != m.size() )
        fail( ErrorKind::Validation, "relation is over a carrier of a different size" );
    if ( !is_symmetric( r ) )
        fail( ErrorKind::Validation, "relation must be symmetric" );

    // Join of the atom partition and the classes generated by r.
    std::vector<StateId> parent( m.size() );
    std::iota( parent.begin(), parent.end(), StateId{ 0 } );
    auto find = [ & ]( StateId x ) {
        while ( parent[ x ] != x )
            x = parent[ x ] = parent[ parent[ x ] ];
        return x;
    };
    auto unite = [ & ]( StateId x, StateId y ) { parent[ find( x ) ] = find( y ); };
    for ( StateSet atom : m.field().atoms() )
    {
        StateId first = static_cast<StateId>( std::countr_zero( atom ) );
        for ( StateId s = 0; s < m.size(); ++s )
            if ( has( atom, s ) )
                unite( first, s );
    }
    for ( StateId s = 0; s < m.size(); ++s )
        for ( StateId t = 0; t < m.size(); ++t )
            if ( has( r[ s ], t ) )
                unite( s, t );

    std::map<StateId, StateSet> classes;
    for ( StateId s = 0; s < m.size(); ++s )
        classes[ find( s ) ] |= singleton( s );
    std::vector<StateSet> atoms;
    for ( const auto& [ root, set ] : classes )
        atoms.push_back( set );
    return { m.size(), std::move( atoms ) };
}

bool check_event_bisimulation( const FiniteMlts& m, const Field& lambda )
{
    if ( !m.field().includes( lambda ) )
        fail( ErrorKind::Validation, "Λ is not a sub-field of the MLTS field" );
    for ( LabelId a = 0; a < m.labels().size(); ++a )
        for ( StateSet q : lambda.atoms() )
            if ( !lambda.contains( pre_image( m, a, q ) ) )
                return false;
    return true;
}

bool check_event_bisimulation( const FiniteMlts& m, const std::vector<StateSet>& lambda )
{
    return check_event_bisimulation( m, Field::from_family( m.size(), lambda ) );
}

namespace
{

bool state_condition( const std::vector<StateSet>& pres, StateId s, StateId t )
{
    return std::ranges::all_of( pres, [ & ]( StateSet p ) { return has( p, s ) == has( p, t ); } );
}

std::vector<StateSet> pre_of_atoms( const FiniteMlts& m, const Field& f )
{
    std::vector<StateSet> out;
    for ( LabelId a = 0; a < m.labels().size(); ++a )
        for ( StateSet q : f.atoms() )
            out.push_back( pre_image( m, a, q ) );
    return out;
}

// Every u ∈ T̃_a(s) has some v ∈ T̃_a(t) in the same atom of `closed`.
bool traditional_condition( const FiniteMlts& m, const Field& closed, StateId s, StateId t )
{
    for ( LabelId a = 0; a < m.labels().size(); ++a )
    {
        StateSet from_t = m.transitions( a, t );
        for ( StateSet atom : closed.atoms() )
            if ( ( m.transitions( a, s ) & atom ) != 0 && ( from_t & atom ) == 0 )
                return false;
    }
    return true;
}

template <typename Condition>
bool check_pairs( const FiniteMlts& m, const StateRelation& r, Condition&& cond )
{
    for ( StateId s = 0; s < m.size(); ++s )
        for ( StateId t = 0; t < m.size(); ++t )
            if ( has( r[ s ], t ) && !cond( s, t ) )
                return false;
    return true;
}

// Greatest fixpoint of R ↦ {(s,t) ∈ R : cond_R(s,t) ∧ cond_R(t,s)} from the full relation.
template <typename MakeCondition>
StateRelation greatest_fixpoint( const FiniteMlts& m, MakeCondition&& make_condition )
{
    StateRelation r = full_relation( m.size() );
    while ( true )
    {
        auto cond = make_condition( r );
        StateRelation next( m.size(), 0 );
        for ( StateId s = 0; s < m.size(); ++s )
            for ( StateId t = 0; t < m.size(); ++t )
                if ( has( r[ s ], t ) && cond( s, t ) && cond( t, s ) )
                    next[ s ] |= singleton( t );
        if ( next == r )
            return r;
        r = std::move( next );
    }
}

} // namespace

bool check_state_bisimulation( const FiniteMlts& m, const StateRelation& r )
{
    Field closed = r_closed_field( m, r );
    auto pres = pre_of_atoms( m, closed );
    return check_pairs( m, r, [ & ]( StateId s, StateId t ) { return state_condition( pres, s, t ); } );
}

bool check_traditional_bisimulation( const FiniteMlts& m, const StateRelation& r )
{
    Field closed = r_closed_field( m, r );
    return check_pairs( m, r, [ & ]( StateId s, StateId t ) { return traditional_condition( m, closed, s, t ); } );
}

Field least_stable_subfield( const FiniteMlts& m )
{
    std::vector<std::vector<StateSet>> trans( m.labels().size(), std::vector<StateSet>( m.size() ) );
    for ( LabelId a = 0; a < m.labels().size(); ++a )
        for ( StateId s = 0; s < m.size(); ++s )
            trans[ a ][ s ] = m.transitions( a, s );
    return stable_closure( m.size(), trans, {} );
}

Bisimilarities maximal_bisimilarities( const FiniteMlts& m )
{
    Bisimilarities out;
    out.traditional = greatest_fixpoint( m, [ & ]( const StateRelation& r ) {
        Field closed = r_closed_field( m, r );
        return [ &m, closed ]( StateId s, StateId t ) { return traditional_condition( m, closed, s, t ); };
    } );
    out.state = greatest_fixpoint( m, [ & ]( const StateRelation& r ) {
        auto pres = pre_of_atoms( m, r_closed_field( m, r ) );
        return [ pres ]( StateId s, StateId t ) { return state_condition( pres, s, t ); };
    } );
    out.event = agreement_relation( least_stable_subfield( m ) );
    return out;
}

} // namespace bisimlab
