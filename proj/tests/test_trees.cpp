#include "bisimlab/error.hpp"
#include "bisimlab/lts.hpp"
#include "bisimlab/trees.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace bisimlab;

namespace
{

OrderDescriptor D( const std::string& text )
{
    return OrderDescriptor::parse( text );
}

bool roots_bisimilar( const FiniteTree& a, const FiniteTree& b )
{
    Lts sum = disjoint_sum( lts_from_tree( a ).lts, lts_from_tree( b ).lts );
    Partition p = bisim_partition( sum );
    return p[ sum.state( "A:<>" ) ] == p[ sum.state( "B:<>" ) ];
}

} // namespace

TEST_CASE( "tree_from_order" )
{
    FiniteTree t = tree_from_order( ExplicitOrder::chain( { 0, 1, 2 } ) );
    CHECK( t.nodes() == std::set<Seq>{ {}, { 0 }, { 1 }, { 2 }, { 1, 0 }, { 2, 0 }, { 2, 1 }, { 2, 1, 0 } } );
    CHECK( tree_from_order( { {}, {} } ).nodes() == std::set<Seq>{ {} } );
    CHECK( tree_from_order( ExplicitOrder::chain( { 5 } ) ).nodes() == std::set<Seq>{ {}, { 5 } } );
    CHECK_THROWS_AS( tree_from_order( { { 0, 1 }, {} } ), Error );

    // A reversed chain gives the mirrored tree.
    ExplicitOrder rev{ { 0, 1, 2 }, { { 2, 1 }, { 1, 0 }, { 2, 0 } } };
    CHECK( tree_from_order( rev ).contains( { 0, 1, 2 } ) );
    CHECK_FALSE( tree_from_order( rev ).contains( { 2, 1 } ) );
}

TEST_CASE( "tree_from_order matches the decreasing-sequence oracle" )
{
    for ( Nat n = 0; n <= 5; ++n )
    {
        std::vector<Nat> carrier;
        for ( Nat i = 0; i < n; ++i )
            carrier.push_back( i );
        CHECK( tree_from_order( ExplicitOrder::chain( carrier ) ).nodes() == oracle::decreasing_sequences( n ) );
    }
}

TEST_CASE( "FiniteTree validation" )
{
    CHECK_THROWS_AS( FiniteTree( std::set<Seq>{ { 0 } } ), Error );
    CHECK_THROWS_AS( FiniteTree( std::set<Seq>{ {}, { 0, 1 } } ), Error );
    FiniteTree t( std::set<Seq>{ {}, { 3 }, { 1 } } );
    CHECK( t.children( {} ) == std::vector<Nat>{ 1, 3 } );
    CHECK_THROWS_AS( (void)t.children( { 2 } ), Error );
}

TEST_CASE( "lazy_tree_from_descriptor children" )
{
    LazyTree w = lazy_tree_from_descriptor( D( "w" ) );
    Children c = w.children( {}, 3 );
    CHECK( c.items == std::vector<Nat>{ 0, 1, 2 } );
    CHECK_FALSE( c.exhaustive );

    LazyTree two = lazy_tree_from_descriptor( D( "2" ) );
    Children c2 = two.children( { 1 }, 10 );
    CHECK( c2.items == std::vector<Nat>{ 0 } );
    CHECK( c2.exhaustive );
    CHECK( two.children( {}, 2 ).exhaustive );
    CHECK_FALSE( two.children( {}, 1 ).exhaustive );
    CHECK_FALSE( two.contains( { 0, 1 } ) );
    CHECK_THROWS_AS( (void)two.children( { 0, 1 }, 3 ), Error );

    OrderDescriptor star = D( "w*" );
    LazyTree t = lazy_tree_from_descriptor( star );
    Children c3 = t.children( { 0 }, 4 );
    CHECK( c3.items.size() == 4 );
    CHECK_FALSE( c3.exhaustive );
    for ( Nat code : c3.items )
    {
        CHECK( precedes( star, *element_from_code( star, code ), *element_from_code( star, 0 ) ) );
        CHECK( t.contains( { 0, code } ) );
    }
}

TEST_CASE( "lazy descriptor trees agree with explicit trees on finite orders" )
{
    for ( Nat n = 0; n <= 5; ++n )
    {
        std::vector<Nat> carrier;
        for ( Nat i = 0; i < n; ++i )
            carrier.push_back( i );
        FiniteTree expected = tree_from_order( ExplicitOrder::chain( carrier ) );
        OrderDescriptor d = n == 0 ? D( "" ) : OrderDescriptor{ { Atom::fin( n ) } };
        TreeLts built = lts_from_tree( lazy_tree_from_descriptor( d ), n + 1, n + 1 );
        CHECK( built.exhaustive );
        std::set<Seq> nodes;
        for ( const auto& [ s, id ] : built.state_of )
            nodes.insert( s );
        CHECK( nodes == expected.nodes() );
    }
}

TEST_CASE( "membership_local" )
{
    CHECK( membership_local( RelationPatch{ { { 1, 2 }, true } }, { 2, 1 } ) );
    CHECK( membership_local( RelationPatch{}, {} ) );
    CHECK( membership_local( RelationPatch{}, { 7 } ) );
    CHECK_FALSE( membership_local( RelationPatch{ { { 1, 2 }, true }, { { 0, 1 }, false } }, { 2, 1, 0 } ) );
}

TEST_CASE( "membership_local agrees with tree_from_order" )
{
    for ( Nat n = 1; n <= 4; ++n )
    {
        std::vector<Nat> carrier;
        for ( Nat i = 0; i < n; ++i )
            carrier.push_back( i );
        ExplicitOrder o = ExplicitOrder::chain( carrier );
        RelationPatch patch;
        for ( auto [ a, b ] : o.pairs )
            patch.set( a, b, true );
        FiniteTree t = tree_from_order( o );
        // every sequence over the carrier of length <= 4
        std::vector<Seq> layer{ Seq{} };
        for ( std::size_t len = 0; len <= 4; ++len )
        {
            std::vector<Seq> next;
            for ( const Seq& s : layer )
            {
                bool is_node = s.empty() || std::ranges::adjacent_find( s, std::less_equal<>{} ) == s.end();
                CHECK( membership_local( patch, s ) == t.contains( s ) );
                CHECK( t.contains( s ) == is_node );
                for ( Nat x : carrier )
                {
                    Seq e = s;
                    e.push_back( x );
                    next.push_back( e );
                }
            }
            layer = std::move( next );
        }
    }
}

TEST_CASE( "lazy_tree_from_patch" )
{
    RelationPatch patch{ { { 0, 1 }, true }, { { 1, 2 }, true }, { { 0, 2 }, true } };
    LazyTree t = lazy_tree_from_patch( patch );
    CHECK( t.contains( { 2, 1, 0 } ) );
    CHECK_FALSE( t.contains( { 0, 1 } ) );
    Children c = t.children( { 2 }, 10 );
    CHECK( c.items == std::vector<Nat>{ 0, 1 } );
    CHECK( c.exhaustive );
    CHECK_FALSE( t.children( {}, 5 ).exhaustive );
    CHECK( rank( t, { 2 } ) == RankValue::of( Ordinal::finite( 2 ) ) );
    CHECK( rank( t, {} ) == RankValue::of( Ordinal::finite( 3 ) ) );

    RelationPatch loop{ { { 0, 1 }, true }, { { 1, 0 }, true } };
    CHECK( rank( lazy_tree_from_patch( loop ), { 0 } ).top );
}

TEST_CASE( "rank" )
{
    FiniteTree l = tree_from_order( ExplicitOrder::chain( { 0, 1, 2 } ) );
    CHECK( rank( l, {} ) == RankValue::of( Ordinal::finite( 3 ) ) );
    CHECK( rank( l, { 2, 1, 0 } ) == RankValue::of( Ordinal::finite( 0 ) ) );
    CHECK( rank( l, { 0 } ) == RankValue::of( Ordinal::finite( 0 ) ) );
    CHECK_THROWS_AS( rank( l, { 0, 1 } ), Error );

    LazyTree w = lazy_tree_from_descriptor( D( "w" ) );
    RankValue root = rank( w, {} );
    CHECK( root == RankValue::of( Ordinal::omega() ) );
    for ( Nat code : w.children( {}, 20 ).items )
    {
        RankValue r = rank( w, { code } );
        CHECK( r == RankValue::of( Ordinal::finite( code ) ) );
        CHECK( r.ord < root.ord );
    }

    CHECK( rank( lazy_tree_from_descriptor( D( "w*" ) ), {} ).top );
    CHECK( rank( lazy_tree_from_descriptor( D( "w*" ) ), { 3 } ).top );
    CHECK( rank( lazy_tree_from_descriptor( D( "2+w+1" ) ), {} ) == RankValue::of( { 1, 1 } ) );
    LazyTree l2 = lazy_tree_from_descriptor( D( "3+w*" ) );
    CHECK( rank( l2, {} ).top );
    for ( Nat code : l2.children( {}, 10 ).items )
    {
        Element e = *element_from_code( D( "3+w*" ), code );
        CHECK( rank( l2, { code } ).top == ( e.atom == 1 ) );
    }
    CHECK( to_string( RankValue::infinite() ) == "Top" );
}

TEST_CASE( "finite ranks decrease along edges" )
{
    std::mt19937 rng( 7 );
    for ( int i = 0; i < 50; ++i )
    {
        FiniteTree t = oracle::random_tree( rng, 20 );
        for ( const Seq& s : t.nodes() )
            for ( Nat n : t.children( s ) )
            {
                Seq c = s;
                c.push_back( n );
                CHECK( rank( t, c ).ord < rank( t, s ).ord );
            }
    }
}

TEST_CASE( "canonical_form" )
{
    CHECK( canonical_form( FiniteTree() ).to_string() == "{}" );
    CHECK( canonical_form( FiniteTree( { {}, { 0 }, { 1 } } ) ).to_string() == "{{}}" );
    FiniteTree l = tree_from_order( ExplicitOrder::chain( { 0, 1, 2 } ) );
    FiniteTree l789 = tree_from_order( ExplicitOrder::chain( { 7, 8, 9 } ) );
    CHECK( canonical_form( l ) == canonical_form( l789 ) );
    Lts sum = disjoint_sum( lts_from_tree( l ).lts, lts_from_tree( l789 ).lts );
    CHECK( bisim_witness_bruteforce( sum, sum.state( "A:<>" ), sum.state( "B:<>" ), 16 ).has_value() );
    CHECK( canonical_form( l, { 2, 1 } ) == canonical_form( FiniteTree( { {}, { 0 } } ) ) );
}

TEST_CASE( "canonical forms decide bisimilarity of random trees" )
{
    std::mt19937 rng( 11 );
    std::size_t positives = 0;
    for ( int i = 0; i < 200; ++i )
    {
        FiniteTree a = oracle::random_tree( rng, i % 2 == 0 ? 6 : 25 );
        FiniteTree b = oracle::random_tree( rng, i % 2 == 0 ? 6 : 25 );
        bool expected = oracle::trees_bisimilar( a, {}, b, {} );
        positives += expected ? 1 : 0;
        CHECK( ( canonical_form( a ) == canonical_form( b ) ) == expected );
        CHECK( roots_bisimilar( a, b ) == expected );

        FiniteTree rebuilt = canonical_form( a ).to_tree();
        CHECK( canonical_form( rebuilt ) == canonical_form( a ) );
        CHECK( rebuilt.size() <= a.size() );
    }
    CHECK( positives > 0 );
}

TEST_CASE( "omega_expansion_truncated" )
{
    FiniteTree single( { {}, { 0 } } );
    CHECK( omega_expansion_truncated( single, 2 ).children( {} ).size() == 2 );
    FiniteTree pair( { {}, { 0 }, { 1 } } );
    FiniteTree six = omega_expansion_truncated( pair, 3 );
    CHECK( six.children( {} ).size() == 6 );
    CHECK( six.size() == 7 );
    CHECK_THROWS_AS( omega_expansion_truncated( pair, 0 ), Error );

    std::mt19937 rng( 5 );
    for ( int i = 0; i < 60; ++i )
    {
        FiniteTree t = oracle::random_tree( rng, 15 );
        CHECK( omega_expansion_truncated( t, 1 ).size() == t.size() );
        CHECK( canonical_form( omega_expansion_truncated( t, 1 ) ) == canonical_form( t ) );
        std::size_t height = 0;
        for ( const Seq& s : t.nodes() )
            height = std::max( height, s.size() );
        // k^height copies of the deepest nodes
        Nat max_k = height <= 8 ? 3 : 2;
        for ( Nat k = 1; k <= max_k; ++k )
            CHECK( roots_bisimilar( t, omega_expansion_truncated( t, k ) ) );
    }
}
