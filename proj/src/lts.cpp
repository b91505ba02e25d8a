#include "bisimlab/lts.hpp"

#include "bisimlab/error.hpp"

#include <algorithm>
#include <bitset>
#include <deque>

namespace bisimlab
{

Lts::Lts( std::vector<std::string> states, std::vector<std::string> labels )
        : _states{ std::move( states ) }, _labels{ std::move( labels ) }
{
    for ( StateId s = 0; s < _states.size(); ++s )
        if ( !_state_index.emplace( _states[ s ], s ).second )
            fail( ErrorKind::Validation, "duplicate state '" + _states[ s ] + "'" );
    for ( LabelId a = 0; a < _labels.size(); ++a )
        if ( !_label_index.emplace( _labels[ a ], a ).second )
            fail( ErrorKind::Validation, "duplicate label '" + _labels[ a ] + "'" );
    _succ.assign( _labels.size(), std::vector<std::vector<StateId>>( _states.size() ) );
}

void Lts::add_transition( LabelId label, StateId from, StateId to )
{
    if ( label >= _labels.size() || from >= _states.size() || to >= _states.size() )
        fail( ErrorKind::Validation, "transition references an undeclared state or label" );
    auto& out = _succ[ label ][ from ];
    auto it = std::ranges::lower_bound( out, to );
    if ( it == out.end() || *it != to )
        out.insert( it, to );
}

void Lts::add_transition( const std::string& label, const std::string& from, const std::string& to )
{
    add_transition( this->label( label ), state( from ), state( to ) );
}

std::size_t Lts::num_transitions() const
{
    std::size_t n = 0;
    for ( const auto& per_label : _succ )
        for ( const auto& out : per_label )
            n += out.size();
    return n;
}

StateId Lts::state( const std::string& name ) const
{
    auto it = _state_index.find( name );
    if ( it == _state_index.end() )
        fail( ErrorKind::Domain, "unknown state '" + name + "'" );
    return it->second;
}

LabelId Lts::label( const std::string& name ) const
{
    auto found = find_label( name );
    if ( !found )
        fail( ErrorKind::Domain, "unknown label '" + name + "'" );
    return *found;
}

std::optional<LabelId> Lts::find_label( const std::string& name ) const
{
    auto it = _label_index.find( name );
    if ( it == _label_index.end() )
        return std::nullopt;
    return it->second;
}

Lts disjoint_sum( const Lts& a, const Lts& b )
{
    std::vector<std::string> states;
    for ( const auto& s : a.state_names() )
        states.push_back( "A:" + s );
    for ( const auto& s : b.state_names() )
        states.push_back( "B:" + s );
    std::vector<std::string> labels = a.labels();
    for ( const auto& l : b.labels() )
        if ( !a.find_label( l ) )
            labels.push_back( l );

    Lts out( std::move( states ), labels );
    for ( LabelId la = 0; la < a.num_labels(); ++la )
        for ( StateId s = 0; s < a.num_states(); ++s )
            for ( StateId t : a.successors( la, s ) )
                out.add_transition( la, s, t );
    std::size_t offset = a.num_states();
    for ( LabelId lb = 0; lb < b.num_labels(); ++lb )
    {
        LabelId merged = out.label( b.labels()[ lb ] );
        for ( StateId s = 0; s < b.num_states(); ++s )
            for ( StateId t : b.successors( lb, s ) )
                out.add_transition( merged, offset + s, offset + t );
    }
    return out;
}

TreeLts lts_from_tree( const LazyTree& t, std::size_t depth, std::size_t bound )
{
    std::vector<Seq> order{ Seq{} };
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    bool exhaustive = true;

    std::deque<std::pair<std::size_t, std::size_t>> queue{ { 0, 0 } }; // (node index, level)
    while ( !queue.empty() )
    {
        auto [ index, level ] = queue.front();
        queue.pop_front();
        Seq node = order[ index ];
        if ( level == depth )
        {
            Children probe = t.children( node, 1 );
            if ( !probe.items.empty() || !probe.exhaustive )
                exhaustive = false;
            continue;
        }
        Children kids = t.children( node, bound );
        exhaustive = exhaustive && kids.exhaustive;
        for ( Nat n : kids.items )
        {
            Seq child = node;
            child.push_back( n );
            order.push_back( std::move( child ) );
            edges.emplace_back( index, order.size() - 1 );
            queue.emplace_back( order.size() - 1, level + 1 );
        }
    }

    std::vector<std::string> names;
    names.reserve( order.size() );
    for ( const Seq& s : order )
        names.push_back( seq_to_string( s ) );
    TreeLts out{ Lts( std::move( names ), { tree_label } ), exhaustive, {} };
    for ( auto [ from, to ] : edges )
        out.lts.add_transition( 0, from, to );
    for ( StateId i = 0; i < order.size(); ++i )
        out.state_of.emplace( order[ i ], i );
    return out;
}

TreeLts lts_from_tree( const FiniteTree& t )
{
    return lts_from_tree( lazy_tree_from_finite( t ), t.size(), t.size() );
}

LazyTree lazy_tree_from_lts( const Lts& l, StateId root )
{
    if ( l.num_labels() != 1 )
        fail( ErrorKind::Unsupported, "unfolding needs a single-label Lts" );
    if ( root >= l.num_states() )
        fail( ErrorKind::Domain, "root is not a state" );

    auto membership = [ l, root ]( const Seq& s ) {
        StateId at = root;
        for ( Nat next : s )
        {
            const auto& succ = l.successors( 0, at );
            if ( !std::ranges::binary_search( succ, next ) )
                return false;
            at = next;
        }
        return true;
    };
    auto generator = [ l, root ]( const Seq& s, std::size_t bound ) {
        const auto& succ = l.successors( 0, s.empty() ? root : s.back() );
        Children out;
        out.exhaustive = succ.size() <= bound;
        out.items.assign( succ.begin(), succ.begin() + static_cast<std::ptrdiff_t>( std::min( bound, succ.size() ) ) );
        return out;
    };
    return LazyTree( OpaqueOrigin{ "unfolding of state '" + l.state_name( root ) + "'" }, membership, generator );
}

std::string disrupt_pair_name( const std::string& c, const std::string& d )
{
    return "C:" + c + "|>D:" + d;
}

std::string disrupt_tail_name( const std::string& d )
{
    return "D:" + d;
}

Lts disrupt( const Lts& c, const Lts& d )
{
    if ( c.num_labels() != 1 || d.num_labels() != 1 )
        fail( ErrorKind::Unsupported, "disrupt is defined for single-label systems only" );
    if ( c.labels()[ 0 ] != d.labels()[ 0 ] )
        fail( ErrorKind::Unsupported, "disrupt operands must share their label" );

    std::size_t nc = c.num_states();
    std::size_t nd = d.num_states();
    std::vector<std::string> names;
    names.reserve( nc * nd + nd );
    for ( StateId ci = 0; ci < nc; ++ci )
        for ( StateId di = 0; di < nd; ++di )
            names.push_back( disrupt_pair_name( c.state_name( ci ), d.state_name( di ) ) );
    for ( StateId di = 0; di < nd; ++di )
        names.push_back( disrupt_tail_name( d.state_name( di ) ) );

    Lts out( std::move( names ), { c.labels()[ 0 ] } );
    auto pair = [ nd ]( StateId ci, StateId di ) { return ci * nd + di; };
    auto tail = [ nc, nd ]( StateId di ) { return nc * nd + di; };
    for ( StateId ci = 0; ci < nc; ++ci )
        for ( StateId di = 0; di < nd; ++di )
        {
            for ( StateId cn : c.successors( 0, ci ) )
                out.add_transition( 0, pair( ci, di ), pair( cn, di ) );
            for ( StateId dn : d.successors( 0, di ) )
                out.add_transition( 0, pair( ci, di ), tail( dn ) );
        }
    for ( StateId di = 0; di < nd; ++di )
        for ( StateId dn : d.successors( 0, di ) )
            out.add_transition( 0, tail( di ), tail( dn ) );
    return out;
}

std::size_t block_count( const Partition& p )
{
    std::size_t n = 0;
    for ( std::size_t b : p )
        n = std::max( n, b + 1 );
    return n;
}

Partition normalize_partition( const Partition& p )
{
    std::map<std::size_t, std::size_t> renumber;
    Partition out;
    out.reserve( p.size() );
    for ( std::size_t b : p )
        out.push_back( renumber.try_emplace( b, renumber.size() ).first->second );
    return out;
}

std::vector<Partition> bisim_refinement_trace( const Lts& l )
{
    std::vector<Partition> trace{ Partition( l.num_states(), 0 ) };
    while ( true )
    {
        const Partition& current = trace.back();
        using Signature = std::pair<std::size_t, std::vector<std::pair<LabelId, std::size_t>>>;
        std::map<Signature, std::size_t> blocks;
        Partition next( l.num_states() );
        for ( StateId s = 0; s < l.num_states(); ++s )
        {
            Signature sig{ current[ s ], {} };
            for ( LabelId a = 0; a < l.num_labels(); ++a )
                for ( StateId t : l.successors( a, s ) )
                    sig.second.emplace_back( a, current[ t ] );
            std::ranges::sort( sig.second );
            auto dup = std::unique( sig.second.begin(), sig.second.end() );
            sig.second.erase( dup, sig.second.end() );
            next[ s ] = blocks.try_emplace( std::move( sig ), blocks.size() ).first->second;
        }
        next = normalize_partition( next );
        if ( block_count( next ) == block_count( current ) )
            return trace;
        trace.push_back( std::move( next ) );
    }
}

Partition bisim_partition( const Lts& l )
{
    return bisim_refinement_trace( l ).back();
}

bool is_bisimulation( const Lts& l, const Relation& r )
{
    for ( auto [ u, v ] : r )
        for ( LabelId a = 0; a < l.num_labels(); ++a )
        {
            for ( StateId u2 : l.successors( a, u ) )
                if ( std::ranges::none_of( l.successors( a, v ),
                                           [ & ]( StateId v2 ) { return r.contains( { u2, v2 } ); } ) )
                    return false;
            for ( StateId v2 : l.successors( a, v ) )
                if ( std::ranges::none_of( l.successors( a, u ),
                                           [ & ]( StateId u2 ) { return r.contains( { u2, v2 } ); } ) )
                    return false;
        }
    return true;
}

namespace
{

constexpr std::size_t max_witness_states = 16;
using PairSet = std::bitset<max_witness_states * max_witness_states>;

// Search over closure-completions of {(s,t)}: repeatedly pick the unmet
// forth/back obligation with the fewest candidate pairs and branch on them.
// Relations proven to have no bisimulation extension are kept as nogoods;
// any relation containing one is abandoned.
class WitnessSearch
{
    const Lts& _l;
    std::size_t _n;
    std::vector<PairSet> _nogoods;
    std::vector<std::vector<bool>> _enabled; // [state][label]

    [[nodiscard]] std::size_t bit( StateId u, StateId v ) const { return u * _n + v; }

    [[nodiscard]] bool compatible( StateId u, StateId v ) const { return _enabled[ u ] == _enabled[ v ]; }

    // Candidate pairs for the most constrained unmet obligation; nullopt when
    // every obligation is met.
    std::optional<std::vector<std::pair<StateId, StateId>>> next_obligation( const PairSet& r ) const
    {
        std::optional<std::vector<std::pair<StateId, StateId>>> best;
        for ( StateId u = 0; u < _n; ++u )
            for ( StateId v = 0; v < _n; ++v )
            {
                if ( !r.test( bit( u, v ) ) )
                    continue;
                for ( LabelId a = 0; a < _l.num_labels(); ++a )
                {
                    const auto& su = _l.successors( a, u );
                    const auto& sv = _l.successors( a, v );
                    for ( StateId u2 : su )
                    {
                        if ( std::ranges::any_of( sv, [ & ]( StateId v2 ) { return r.test( bit( u2, v2 ) ); } ) )
                            continue;
                        std::vector<std::pair<StateId, StateId>> options;
                        for ( StateId v2 : sv )
                            if ( compatible( u2, v2 ) )
                                options.emplace_back( u2, v2 );
                        if ( !best || options.size() < best->size() )
                            best = std::move( options );
                        if ( best->empty() )
                            return best;
                    }
                    for ( StateId v2 : sv )
                    {
                        if ( std::ranges::any_of( su, [ & ]( StateId u2 ) { return r.test( bit( u2, v2 ) ); } ) )
                            continue;
                        std::vector<std::pair<StateId, StateId>> options;
                        for ( StateId u2 : su )
                            if ( compatible( u2, v2 ) )
                                options.emplace_back( u2, v2 );
                        if ( !best || options.size() < best->size() )
                            best = std::move( options );
                        if ( best->empty() )
                            return best;
                    }
                }
            }
        return best;
    }

    bool known_dead( const PairSet& r ) const
    {
        return std::ranges::any_of( _nogoods, [ & ]( const PairSet& n ) { return ( r & n ) == n; } );
    }

public:
    explicit WitnessSearch( const Lts& l ) : _l{ l }, _n{ l.num_states() }
    {
        _enabled.assign( _n, std::vector<bool>( l.num_labels() ) );
        for ( StateId s = 0; s < _n; ++s )
            for ( LabelId a = 0; a < l.num_labels(); ++a )
                _enabled[ s ][ a ] = !l.successors( a, s ).empty();
    }

    std::optional<PairSet> extend( const PairSet& r )
    {
        if ( known_dead( r ) )
            return std::nullopt;
        auto obligation = next_obligation( r );
        if ( !obligation )
            return r;
        for ( auto [ u, v ] : *obligation )
        {
            PairSet grown = r;
            grown.set( bit( u, v ) );
            if ( auto found = extend( grown ) )
                return found;
        }
        _nogoods.push_back( r );
        return std::nullopt;
    }

    std::optional<PairSet> run( StateId s, StateId t )
    {
        if ( !compatible( s, t ) )
            return std::nullopt;
        PairSet start;
        start.set( bit( s, t ) );
        return extend( start );
    }

    [[nodiscard]] Relation to_relation( const PairSet& r ) const
    {
        Relation out;
        for ( StateId u = 0; u < _n; ++u )
            for ( StateId v = 0; v < _n; ++v )
                if ( r.test( bit( u, v ) ) )
                    out.emplace( u, v );
        return out;
    }
};

} // namespace

std::optional<Relation> bisim_witness_bruteforce( const Lts& l, StateId s, StateId t, std::size_t cap )
{
    cap = std::min( cap, max_witness_states );
    if ( l.num_states() > cap )
        fail( ErrorKind::Resource, "witness search is capped at " + std::to_string( cap ) + " states (got " +
                                           std::to_string( l.num_states() ) + "); use bisim_partition" );
    if ( s >= l.num_states() || t >= l.num_states() )
        fail( ErrorKind::Domain, "witness search from a non-state" );
    WitnessSearch search( l );
    auto found = search.run( s, t );
    if ( !found )
        return std::nullopt;
    return search.to_relation( *found );
}

namespace
{

Formula simplify_conj( std::vector<Formula> parts )
{
    if ( parts.empty() )
        return Formula::top();
    if ( parts.size() == 1 )
        return std::move( parts.front() );
    return Formula::conj( std::move( parts ) );
}

Formula simplify_not( Formula f )
{
    if ( f.kind() == Formula::Kind::Not )
        return f.body();
    return Formula::negate( std::move( f ) );
}

class Distinguisher
{
    const Lts& _l;
    std::vector<Partition> _trace;
    std::map<std::pair<StateId, StateId>, Formula> _memo;

    // First refinement round separating s and t, or nullopt if never.
    std::optional<std::size_t> split_round( StateId s, StateId t ) const
    {
        for ( std::size_t i = 0; i < _trace.size(); ++i )
            if ( _trace[ i ][ s ] != _trace[ i ][ t ] )
                return i;
        return std::nullopt;
    }

    // Some a-successor of `from` lies in a block (at `round`) that no
    // a-successor of `other` reaches.
    std::optional<StateId> unmatched( LabelId a, StateId from, StateId other, std::size_t round ) const
    {
        const Partition& p = _trace[ round ];
        for ( StateId x : _l.successors( a, from ) )
            if ( std::ranges::none_of( _l.successors( a, other ), [ & ]( StateId y ) { return p[ y ] == p[ x ]; } ) )
                return x;
        return std::nullopt;
    }

public:
    explicit Distinguisher( const Lts& l ) : _l{ l }, _trace{ bisim_refinement_trace( l ) } {}

    bool separated( StateId s, StateId t ) const { return split_round( s, t ).has_value(); }

    // Precondition: separated(s, t).
    const Formula& formula( StateId s, StateId t )
    {
        if ( auto it = _memo.find( { s, t } ); it != _memo.end() )
            return it->second;
        std::size_t round = *split_round( s, t ) - 1;
        std::optional<Formula> result;
        for ( LabelId a = 0; a < _l.num_labels() && !result; ++a )
        {
            const std::string& label = _l.labels()[ a ];
            if ( auto x = unmatched( a, s, t, round ) )
            {
                std::vector<Formula> parts;
                for ( StateId y : _l.successors( a, t ) )
                    parts.push_back( formula( *x, y ) );
                result = Formula::diamond( label, simplify_conj( std::move( parts ) ) );
            }
            else if ( auto y = unmatched( a, t, s, round ) )
            {
                std::vector<Formula> parts;
                for ( StateId x : _l.successors( a, s ) )
                    parts.push_back( formula( *y, x ) );
                result = Formula::negate( Formula::diamond( label, simplify_conj( std::move( parts ) ) ) );
            }
        }
        return _memo.emplace( std::make_pair( s, t ), std::move( *result ) ).first->second;
    }
};

} // namespace

std::optional<Formula> distinguishing_formula( const Lts& l, StateId s, StateId t )
{
    if ( s >= l.num_states() || t >= l.num_states() )
        fail( ErrorKind::Domain, "distinguishing formula for a non-state" );
    Distinguisher d( l );
    if ( !d.separated( s, t ) )
        return std::nullopt;
    return d.formula( s, t );
}

std::string verdict_name( const Verdict& v )
{
    if ( std::holds_alternative<Bisimilar>( v ) )
        return "bisimilar";
    if ( std::holds_alternative<NotBisimilar>( v ) )
        return "not-bisimilar";
    return "bounded";
}

namespace
{

class StratifiedGame
{
public:
    struct Outcome
    {
        bool related = true;
        bool sound = false; // negative outcome backed by exhaustive enumerations
        std::optional<Formula> formula; // true on the left, false on the right
        std::vector<std::pair<Seq, Seq>> matches;
    };

private:
    const LazyTree& _left;
    const LazyTree& _right;
    std::size_t _bound;
    std::map<std::tuple<std::size_t, Seq, Seq>, Outcome> _memo;

    static Seq extend( const Seq& s, Nat n )
    {
        Seq out = s;
        out.push_back( n );
        return out;
    }

public:
    StratifiedGame( const LazyTree& left, const LazyTree& right, std::size_t bound )
            : _left{ left }, _right{ right }, _bound{ bound }
    {}

    const Outcome& play( std::size_t rounds, const Seq& x, const Seq& y )
    {
        auto key = std::make_tuple( rounds, x, y );
        if ( auto it = _memo.find( key ); it != _memo.end() )
            return it->second;

        Outcome out;
        if ( rounds > 0 )
        {
            Children cx = _left.children( x, _bound );
            Children cy = _right.children( y, _bound );

            std::vector<Seq> lonely_left, lonely_right;
            for ( Nat a : cx.items )
            {
                Seq xa = extend( x, a );
                auto hit = std::ranges::find_if(
                        cy.items, [ & ]( Nat b ) { return play( rounds - 1, xa, extend( y, b ) ).related; } );
                if ( hit == cy.items.end() )
                    lonely_left.push_back( xa );
                else
                    out.matches.emplace_back( xa, extend( y, *hit ) );
            }
            for ( Nat b : cy.items )
            {
                Seq yb = extend( y, b );
                auto hit = std::ranges::find_if(
                        cx.items, [ & ]( Nat a ) { return play( rounds - 1, extend( x, a ), yb ).related; } );
                if ( hit == cx.items.end() )
                    lonely_right.push_back( yb );
                else
                    out.matches.emplace_back( extend( x, *hit ), yb );
            }

            if ( !lonely_left.empty() || !lonely_right.empty() )
            {
                out.related = false;
                out.matches.clear();
                // A lonely left child xa: <l>(⋀_b ψ(xa, yb)), sound when y's list was complete.
                if ( cy.exhaustive )
                    for ( const Seq& xa : lonely_left )
                    {
                        std::vector<Formula> parts;
                        bool ok = true;
                        for ( Nat b : cy.items )
                        {
                            const Outcome& sub = play( rounds - 1, xa, extend( y, b ) );
                            if ( !sub.sound )
                            {
                                ok = false;
                                break;
                            }
                            parts.push_back( *sub.formula );
                        }
                        if ( ok )
                        {
                            out.sound = true;
                            out.formula = Formula::diamond( tree_label, simplify_conj( std::move( parts ) ) );
                            break;
                        }
                    }
                // A lonely right child yb: !<l>(⋀_a !ψ(xa, yb)), sound when x's list was complete.
                if ( !out.sound && cx.exhaustive )
                    for ( const Seq& yb : lonely_right )
                    {
                        std::vector<Formula> parts;
                        bool ok = true;
                        for ( Nat a : cx.items )
                        {
                            const Outcome& sub = play( rounds - 1, extend( x, a ), yb );
                            if ( !sub.sound )
                            {
                                ok = false;
                                break;
                            }
                            parts.push_back( simplify_not( *sub.formula ) );
                        }
                        if ( ok )
                        {
                            out.sound = true;
                            out.formula = Formula::negate(
                                    Formula::diamond( tree_label, simplify_conj( std::move( parts ) ) ) );
                            break;
                        }
                    }
            }
        }
        return _memo.emplace( std::move( key ), std::move( out ) ).first->second;
    }

    std::vector<std::pair<std::string, std::string>> witness( std::size_t rounds, const Seq& x, const Seq& y )
    {
        std::vector<std::pair<std::string, std::string>> out;
        std::set<std::pair<Seq, Seq>> seen;
        std::vector<std::tuple<std::size_t, Seq, Seq>> stack{ { rounds, x, y } };
        while ( !stack.empty() )
        {
            auto [ r, a, b ] = std::move( stack.back() );
            stack.pop_back();
            if ( !seen.insert( { a, b } ).second )
                continue;
            out.emplace_back( seq_to_string( a ), seq_to_string( b ) );
            if ( r == 0 )
                continue;
            for ( const auto& [ a2, b2 ] : play( r, a, b ).matches )
                stack.emplace_back( r - 1, a2, b2 );
        }
        std::ranges::sort( out );
        return out;
    }
};

// Every node within `depth` of s had a complete child list, and nodes at
// distance `depth` are leaves.
bool explored_fully( const LazyTree& t, const Seq& s, std::size_t depth, std::size_t bound )
{
    Children kids = t.children( s, depth == 0 ? 1 : bound );
    if ( depth == 0 )
        return kids.items.empty() && kids.exhaustive;
    if ( !kids.exhaustive )
        return false;
    Seq child = s;
    child.push_back( 0 );
    for ( Nat n : kids.items )
    {
        child.back() = n;
        if ( !explored_fully( t, child, depth - 1, bound ) )
            return false;
    }
    return true;
}

} // namespace

Verdict stratified_game( const LazyTree& t1, const Seq& s1, const LazyTree& t2, const Seq& s2, std::size_t depth,
                         std::size_t bound )
{
    if ( !t1.contains( s1 ) || !t2.contains( s2 ) )
        fail( ErrorKind::Domain, "game start nodes must belong to their trees" );
    StratifiedGame game( t1, t2, bound );
    const auto& outcome = game.play( depth, s1, s2 );
    if ( outcome.related )
    {
        if ( explored_fully( t1, s1, depth, bound ) && explored_fully( t2, s2, depth, bound ) )
            return Bisimilar{ game.witness( depth, s1, s2 ) };
        return BoundedBisimilar{ depth, bound };
    }
    if ( outcome.sound )
        return NotBisimilar{ *outcome.formula };
    return BoundedBisimilar{ depth, bound };
}

} // namespace bisimlab
