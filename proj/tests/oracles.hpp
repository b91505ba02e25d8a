#pragma once

// Reference implementations used only by tests. They share no code with the
// library engines beyond the Lts and tree containers.

#include "bisimlab/lts.hpp"
#include "bisimlab/mlts.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <vector>

namespace oracle
{

using namespace bisimlab;

/// Bisimilarity by naive greatest-fixpoint iteration on the pair matrix.
inline std::vector<std::vector<bool>> bisimilarity( const Lts& l )
{
    std::size_t n = l.num_states();
    std::vector<std::vector<bool>> rel( n, std::vector<bool>( n, true ) );
    bool changed = true;
    while ( changed )
    {
        changed = false;
        for ( StateId s = 0; s < n; ++s )
            for ( StateId t = 0; t < n; ++t )
            {
                if ( !rel[ s ][ t ] )
                    continue;
                bool ok = true;
                for ( LabelId a = 0; a < l.num_labels() && ok; ++a )
                {
                    for ( StateId x : l.successors( a, s ) )
                    {
                        bool matched = false;
                        for ( StateId y : l.successors( a, t ) )
                            matched = matched || rel[ x ][ y ];
                        ok = ok && matched;
                    }
                    for ( StateId y : l.successors( a, t ) )
                    {
                        bool matched = false;
                        for ( StateId x : l.successors( a, s ) )
                            matched = matched || rel[ x ][ y ];
                        ok = ok && matched;
                    }
                }
                if ( !ok )
                {
                    rel[ s ][ t ] = false;
                    changed = true;
                }
            }
    }
    return rel;
}

/// Bisimilarity of two finite tree nodes by direct recursion.
inline bool trees_bisimilar( const FiniteTree& a, const Seq& s, const FiniteTree& b, const Seq& t )
{
    auto child = []( Seq s, Nat n ) {
        s.push_back( n );
        return s;
    };
    for ( Nat x : a.children( s ) )
    {
        bool matched = false;
        for ( Nat y : b.children( t ) )
            if ( !matched && trees_bisimilar( a, child( s, x ), b, child( t, y ) ) )
                matched = true;
        if ( !matched )
            return false;
    }
    for ( Nat y : b.children( t ) )
    {
        bool matched = false;
        for ( Nat x : a.children( s ) )
            if ( !matched && trees_bisimilar( a, child( s, x ), b, child( t, y ) ) )
                matched = true;
        if ( !matched )
            return false;
    }
    return true;
}

/// All strictly decreasing sequences over {0..n-1} under the usual order,
/// including ε.
inline std::set<Seq> decreasing_sequences( Nat n )
{
    std::set<Seq> out{ Seq{} };
    for ( std::uint64_t mask = 1; mask < ( std::uint64_t{ 1 } << n ); ++mask )
    {
        Seq s;
        for ( Nat i = n; i-- > 0; )
            if ( ( mask >> i ) & 1U )
                s.push_back( i );
        out.insert( s );
    }
    return out;
}

/// The n-chain 0 < 1 < … < n-1 as an explicit order.
inline ExplicitOrder chain( Nat n )
{
    ExplicitOrder o;
    for ( Nat i = 0; i < n; ++i )
    {
        o.carrier.push_back( i );
        for ( Nat j = i + 1; j < n; ++j )
            o.pairs.insert( { i, j } );
    }
    return o;
}

/// Random Lts with up to `max_states` states over `labels` labels.
inline Lts random_lts( std::mt19937& rng, std::size_t max_states, std::size_t labels, double density )
{
    std::uniform_int_distribution<std::size_t> size( 1, max_states );
    std::bernoulli_distribution edge( density );
    std::size_t n = size( rng );
    std::vector<std::string> states, names;
    for ( std::size_t i = 0; i < n; ++i )
        states.push_back( "s" + std::to_string( i ) );
    for ( std::size_t a = 0; a < labels; ++a )
        names.push_back( std::string( 1, static_cast<char>( 'a' + a ) ) );
    Lts l( states, names );
    for ( LabelId a = 0; a < labels; ++a )
        for ( StateId s = 0; s < n; ++s )
            for ( StateId t = 0; t < n; ++t )
                if ( edge( rng ) )
                    l.add_transition( a, s, t );
    return l;
}

/// Single-label Lts on n states whose edge set is the bit pattern `code`
/// (bit s*n+t is the edge s -> t).
inline Lts lts_from_code( std::size_t n, std::uint64_t code )
{
    std::vector<std::string> states;
    for ( std::size_t i = 0; i < n; ++i )
        states.push_back( "s" + std::to_string( i ) );
    Lts l( states, { "l" } );
    for ( StateId s = 0; s < n; ++s )
        for ( StateId t = 0; t < n; ++t )
            if ( ( code >> ( s * n + t ) ) & 1U )
                l.add_transition( 0, s, t );
    return l;
}

/// Random finite tree with at most `max_nodes` nodes: each new node hangs
/// below a uniformly chosen existing node.
inline FiniteTree random_tree( std::mt19937& rng, std::size_t max_nodes )
{
    std::uniform_int_distribution<std::size_t> size( 1, max_nodes );
    std::size_t n = size( rng );
    std::vector<Seq> nodes{ Seq{} };
    std::map<Seq, Nat> next_child;
    while ( nodes.size() < n )
    {
        Seq parent = nodes[ std::uniform_int_distribution<std::size_t>( 0, nodes.size() - 1 )( rng ) ];
        parent.push_back( next_child[ parent ]++ );
        nodes.push_back( parent );
    }
    return FiniteTree( std::set<Seq>( nodes.begin(), nodes.end() ) );
}

/// Largest symmetric relation R such that `passes(R)`, found by trying every
/// symmetric relation on the carrier (small carriers only).
inline StateRelation largest_passing( std::size_t n, const std::function<bool( const StateRelation& )>& passes )
{
    std::vector<std::pair<StateId, StateId>> slots;
    for ( StateId s = 0; s < n; ++s )
        for ( StateId t = s; t < n; ++t )
            slots.emplace_back( s, t );
    StateRelation best( n, 0 );
    for ( std::uint64_t mask = 0; mask < ( std::uint64_t{ 1 } << slots.size() ); ++mask )
    {
        StateRelation r( n, 0 );
        for ( std::size_t i = 0; i < slots.size(); ++i )
            if ( ( mask >> i ) & 1U )
            {
                r[ slots[ i ].first ] |= singleton( slots[ i ].second );
                r[ slots[ i ].second ] |= singleton( slots[ i ].first );
            }
        if ( passes( r ) )
            for ( StateId s = 0; s < n; ++s )
                best[ s ] |= r[ s ];
    }
    return best;
}

} // namespace oracle
