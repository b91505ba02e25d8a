#include "bisimlab/error.hpp"
#include "bisimlab/io.hpp"

#include "mlts_suite.hpp"

#include <doctest.h>

#include <sstream>

using namespace bisimlab;

namespace
{

std::string data_error( const std::function<void()>& f )
{
    try
    {
        f();
    }
    catch ( const Error& e )
    {
        CHECK( e.kind() == ErrorKind::Data );
        return e.what();
    }
    FAIL( "expected a data error" );
    return "";
}

std::string dot( const Lts& l )
{
    std::ostringstream out;
    export_dot( l, out );
    return out.str();
}

std::size_t count( const std::string& s, const std::string& needle )
{
    std::size_t n = 0;
    for ( auto pos = s.find( needle ); pos != std::string::npos; pos = s.find( needle, pos + 1 ) )
        ++n;
    return n;
}

} // namespace

TEST_CASE( "descriptor JSON" )
{
    OrderDescriptor d = OrderDescriptor::parse( "3+w+w*" );
    Json j = descriptor_to_json( d );
    CHECK( j[ "schema" ] == "bisimlab/1" );
    CHECK( j[ "atoms" ] == Json::parse( R"([{"fin":3},{"omega":true},{"omegaStar":true}])" ) );
    CHECK( descriptor_from_json( j ) == d );
    CHECK( descriptor_from_json( Json( "2+w" ) ) == OrderDescriptor::parse( "2+w" ) );
    CHECK( data_error( [] { descriptor_from_json( Json::parse( R"({"atoms":[{"fin":0}]})" ) ); } )
                   .starts_with( "$.atoms[0].fin" ) );
    CHECK( data_error( [] { descriptor_from_json( Json::parse( R"({"atoms":[{"fin":2},{"x":1}]})" ) ); } )
                   .starts_with( "$.atoms[1]" ) );
    CHECK( data_error( [] { descriptor_from_json( Json::parse( R"({"schema":"other/2","atoms":[]})" ) ); } )
                   .starts_with( "$.schema" ) );
}

TEST_CASE( "tree JSON" )
{
    FiniteTree t = suite::order_tree( { 0, 1, 2 } );
    CHECK( tree_from_json( tree_to_json( t ) ) == t );
    CHECK( data_error( [] { tree_from_json( Json::parse( R"({"nodes":[[],[0,1]]})" ) ); } )
                   .starts_with( "$.nodes" ) );
    CHECK( data_error( [] { tree_from_json( Json::parse( R"({"nodes":[[],["a"]]})" ) ); } )
                   .starts_with( "$.nodes[1][0]" ) );
}

TEST_CASE( "Lts JSON" )
{
    Json j = Json::parse( R"({"states":["s0","s1"],"labels":["l"],"transitions":{"l":[["s0","s1"],["s1","s1"]]}})" );
    Lts l = lts_from_json( j );
    CHECK( l.num_transitions() == 2 );
    Lts back = lts_from_json( lts_to_json( l ) );
    CHECK( back.state_names() == l.state_names() );
    CHECK( back.num_transitions() == 2 );
    CHECK( data_error( [] {
               lts_from_json( Json::parse( R"({"states":["s0"],"labels":["l"],"transitions":{"l":[["s0","s9"]]}})" ) );
           } ).starts_with( "$.transitions.l[0][1]" ) );
    CHECK( data_error( [] {
               lts_from_json( Json::parse( R"({"states":["s0"],"labels":["l"],"transitions":{"m":[]}})" ) );
           } ).starts_with( "$.transitions.m" ) );
    CHECK( data_error( [] { lts_from_json( Json::parse( R"({"labels":[]})" ) ); } ).starts_with( "$" ) );
    CHECK( data_error( [] { lts_from_json( Json::parse( R"({"states":["a","a"],"labels":[]})" ) ); } )
                   .starts_with( "$" ) );
    CHECK_THROWS_AS( parse_json_text( "{", "input" ), Error );
}

TEST_CASE( "MLTS JSON" )
{
    Json j = Json::parse(
            R"({"carrier":["a","b","c","d"],"field":[["a","b"],["c","d"]],"trans":{"l":{"a":["c","d"],"b":["c","d"]}}})" );
    FiniteMlts m = mlts_from_json( j );
    CHECK( m.field() == suite::coarse_square().field() );
    CHECK( mlts_from_json( mlts_to_json( m ) ).field() == m.field() );

    // the field may list every member instead of the atoms
    Json members = Json::parse( R"({"carrier":["x","y"],"field":[[],["x","y"]],"trans":{}})" );
    CHECK( mlts_from_json( members ).field() == Field::trivial( 2 ) );

    Json powerset = Json::parse( R"({"carrier":["x","y"],"trans":{"l":{"x":["x"]}}})" );
    CHECK( mlts_from_json( powerset ).field() == Field::powerset( 2 ) );

    CHECK( data_error( [] {
               mlts_from_json( Json::parse( R"({"carrier":["x","y"],"field":[[],["x"]],"trans":{}})" ) );
           } ).starts_with( "$.field" ) );
    CHECK( data_error( [] {
               mlts_from_json(
                       Json::parse( R"({"carrier":["x","y"],"field":[["x","y"]],"trans":{"l":{"x":["x"]}}})" ) );
           } ).find( "not a measurable set" ) != std::string::npos );
    CHECK( data_error( [] {
               mlts_from_json( Json::parse( R"({"carrier":["x"],"trans":{"l":{"q":["x"]}}})" ) );
           } ).starts_with( "$.trans.l.q" ) );

    StateRelation r = relation_from_json( m, Json::parse( R"({"classes":[["a","b"]],"pairs":[["c","c"],["d","d"]]})" ) );
    CHECK( r == StateRelation{ 0b0011, 0b0011, 0b0100, 0b1000 } );
    CHECK( relation_from_json( m, relation_to_json( m, r ) ) == r );
    CHECK( field_from_json( m, field_to_json( m, m.field() ) ) == m.field() );
}

TEST_CASE( "catalog and report JSON" )
{
    auto entries = catalog_from_json( Json::parse( R"([{"descriptor":"3+w*","note":"L-prime"},{"descriptor":"2"}])" ) );
    REQUIRE( entries.size() == 2 );
    CHECK( entries[ 0 ].note == "L-prime" );
    CHECK( catalog_from_json( catalog_to_json( entries ) ).size() == 2 );
    CHECK( data_error( [] { catalog_from_json( Json::parse( R"([{"descriptor":"3+"}])" ) ); } )
                   .starts_with( "$[0].descriptor" ) );

    Report r = run_catalog( entries, 4, 6 );
    Json j = report_to_json( r );
    CHECK( j[ "schema" ] == "bisimlab/1" );
    CHECK( j[ "failures" ] == 0 );
    const Json& e0 = j[ "entries" ][ 0 ];
    CHECK( e0[ "descriptor" ] == "3+w*" );
    CHECK( e0[ "isWellorder" ] == false );
    CHECK( e0[ "normalForm" ][ "initial" ] == "w*0+3" );
    CHECK( e0[ "normalForm" ][ "tail" ] == true );
    CHECK( e0[ "symbolicVerdict" ][ "bisimilar" ] == true );
    CHECK( e0[ "gameVerdict" ][ "verdict" ] == "bounded" );
    CHECK( e0[ "exactCheck" ].is_null() );
    CHECK( e0.contains( "millis" ) );
    CHECK( j[ "entries" ][ 1 ][ "exactCheck" ][ "engine" ] == "partition-refinement" );
}

TEST_CASE( "DOT export" )
{
    std::ostringstream single;
    export_dot( FiniteTree(), single );
    CHECK( count( single.str(), ";\n" ) == 1 );
    CHECK( count( single.str(), "->" ) == 0 );

    std::ostringstream l;
    export_dot( suite::order_tree( { 0, 1, 2 } ), l );
    CHECK( count( l.str(), "->" ) == 7 );
    CHECK( count( l.str(), ";\n" ) == 15 );

    Lts loop( { "b", "a" }, { "l" } );
    loop.add_transition( "l", "a", "b" );
    loop.add_transition( "l", "b", "a" );
    std::string text = dot( loop );
    CHECK( text == "digraph lts {\n  \"a\";\n  \"b\";\n  \"a\" -> \"b\" [label=\"l\"];\n"
                   "  \"b\" -> \"a\" [label=\"l\"];\n}\n" );
    CHECK( dot( loop ) == text );

    TreeLts lazy = lts_from_tree( lazy_tree_from_descriptor( OrderDescriptor::parse( "w" ) ), 2, 2 );
    std::ostringstream sink;
    CHECK_THROWS_AS( export_dot( lazy, sink ), Error );
}
