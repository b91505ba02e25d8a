#include "bisimlab/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bisimlab;

namespace
{

struct Run
{
    int code = 0;
    std::string out;
    std::string err;
};

Run run( std::vector<std::string> args )
{
    std::ostringstream out, err;
    int code = dispatch( args, out, err );
    return { code, out.str(), err.str() };
}

std::string write_temp( const std::string& name, const std::string& content )
{
    auto dir = std::filesystem::temp_directory_path() / "bisimlab-cli-tests";
    std::filesystem::create_directories( dir );
    auto path = dir / name;
    std::ofstream( path ) << content;
    return path.string();
}

const char* tree_lts = R"({"states":["r","x","y"],"labels":["l"],"transitions":{"l":[["r","x"],["r","y"]]}})";
const char* small_lts = R"({"states":["r","x"],"labels":["l"],"transitions":{"l":[["r","x"]]}})";
const char* chain_lts = R"({"states":["r","x","y"],"labels":["l"],"transitions":{"l":[["r","x"],["x","y"]]}})";

} // namespace

TEST_CASE( "usage errors" )
{
    CHECK( run( {} ).code == 64 );
    CHECK( run( { "bogus" } ).code == 64 );
    CHECK( run( { "reduce" } ).code == 64 );
    CHECK( run( { "bisim", "check", "--a", "x" } ).code == 64 );
    CHECK( run( { "bisim", "check", "--a", "a", "--sa", "r", "--b", "b", "--sb", "r", "--engine", "z" } ).code ==
           64 );
    CHECK( run( { "order", "validate" } ).code == 64 );
    CHECK( run( { "--help" } ).code == 0 );
}

TEST_CASE( "order commands" )
{
    Run ok = run( { "order", "validate", "--descriptor", "3+w*" } );
    CHECK( ok.code == 0 );
    CHECK( run( { "order", "validate", "--descriptor", "3+" } ).code == 65 );
    CHECK( run( { "order", "validate", "--descriptor", "" } ).code == 0 );
    Run print = run( { "--json", "order", "print", "--descriptor", "2+3+w*" } );
    CHECK( print.code == 0 );
    auto j = nlohmann::json::parse( print.out );
    CHECK( j[ "schema" ] == "bisimlab/1" );
    CHECK( j[ "normalized" ] == "5+w*" );
    CHECK( j[ "normalForm" ][ "tail" ] == true );
    std::string file = write_temp( "d.json", R"({"atoms":[{"fin":2},{"omega":true}]})" );
    CHECK( run( { "order", "print", "--file", file } ).out.find( "w*1+0" ) != std::string::npos );
    std::string bad = write_temp( "bad-d.json", R"({"atoms":[{"fin":"x"}]})" );
    Run b = run( { "order", "print", "--file", bad } );
    CHECK( b.code == 65 );
    CHECK( b.err.find( "$.atoms[0].fin" ) != std::string::npos );
}

TEST_CASE( "tree commands" )
{
    Run build = run( { "--json", "tree", "build", "--descriptor", "3", "--depth", "5", "--bound", "5" } );
    CHECK( build.code == 0 );
    auto j = nlohmann::json::parse( build.out );
    CHECK( j[ "nodes" ].size() == 8 );
    CHECK( j[ "exhaustive" ] == true );

    Run d1 = run( { "tree", "dot", "--descriptor", "3", "--depth", "5", "--bound", "5" } );
    Run d2 = run( { "tree", "dot", "--descriptor", "3", "--depth", "5", "--bound", "5" } );
    CHECK( d1.code == 0 );
    CHECK( d1.out == d2.out );
    CHECK( d1.out.starts_with( "digraph" ) );
    CHECK( run( { "tree", "dot", "--descriptor", "w", "--depth", "2", "--bound", "3" } ).code == 65 );

    std::string file = write_temp( "t.json", R"({"nodes":[[],[0],[1]]})" );
    CHECK( run( { "tree", "dot", "--file", file } ).code == 0 );
}

TEST_CASE( "bisim check" )
{
    std::string a = write_temp( "a.json", tree_lts );
    std::string b = write_temp( "b.json", small_lts );
    std::string c = write_temp( "c.json", chain_lts );
    for ( std::string engine : { "pr", "brute", "game" } )
    {
        Run same = run( { "bisim", "check", "--a", a, "--sa", "r", "--b", b, "--sb", "r", "--engine", engine } );
        CHECK( same.code == 0 );
        CHECK( same.out.find( "witness size" ) != std::string::npos );
        Run diff = run( { "--json", "bisim", "check", "--a", a, "--sa", "r", "--b", c, "--sb", "r", "--engine",
                          engine } );
        CHECK( diff.code == 1 );
        auto j = nlohmann::json::parse( diff.out );
        CHECK( j[ "verdict" ] == "not-bisimilar" );
    }
    Run bounded = run( { "bisim", "check", "--a", a, "--sa", "r", "--b", c, "--sb", "r", "--engine", "game",
                         "--depth", "1" } );
    CHECK( bounded.code == 2 );
    CHECK( run( { "bisim", "check", "--a", a, "--sa", "zz", "--b", b, "--sb", "r" } ).code == 65 );
    std::string broken = write_temp( "broken.json", "{ not json" );
    CHECK( run( { "bisim", "check", "--a", broken, "--sa", "r", "--b", b, "--sb", "r" } ).code == 65 );
}

TEST_CASE( "reduce" )
{
    CHECK( run( { "reduce", "--descriptor", "3" } ).code == 1 );
    Run nwo = run( { "--json", "reduce", "--descriptor", "3+w*", "--depth", "4", "--bound", "6" } );
    CHECK( nwo.code == 0 );
    auto j = nlohmann::json::parse( nwo.out );
    CHECK( j[ "gameVerdict" ][ "verdict" ] == "bounded" );
    CHECK( j[ "symbolicVerdict" ][ "bisimilar" ] == true );
    CHECK( run( { "reduce", "--descriptor", "q" } ).code == 65 );
}

TEST_CASE( "suite run" )
{
    std::string cat = write_temp( "cat.json", R"([{"descriptor":"3+w*","note":"L-prime"},{"descriptor":"3"}])" );
    std::string out = ( std::filesystem::temp_directory_path() / "bisimlab-cli-tests" / "report.json" ).string();
    Run r = run( { "suite", "run", "--catalog", cat, "--out", out } );
    CHECK( r.code == 0 );
    std::ifstream in( out );
    auto report = nlohmann::json::parse( in );
    CHECK( report[ "entries" ].size() == 2 );
    CHECK( report[ "failures" ] == 0 );
    std::string bad = write_temp( "badcat.json", R"({"entries":[{"note":"x"}]})" );
    Run b = run( { "suite", "run", "--catalog", bad, "--out", out } );
    CHECK( b.code == 65 );
    CHECK( b.err.find( "$.entries[0]" ) != std::string::npos );
}

TEST_CASE( "mlts check" )
{
    std::string m = write_temp( "m.json", R"({"carrier":["a","b"],"trans":{"l":{"a":["a"]}}})" );
    std::string id = write_temp( "id.json", R"({"pairs":[["a","a"],["b","b"]]})" );
    std::string swap = write_temp( "swap.json", R"({"pairs":[["a","b"],["b","a"]]})" );
    std::string field = write_temp( "f.json", R"({"field":[["a"],["b"]]})" );
    std::string trivial = write_temp( "tf.json", R"({"field":[["a","b"]]})" );
    for ( std::string kind : { "state", "traditional" } )
    {
        CHECK( run( { "mlts", "check", "--file", m, "--kind", kind, "--rel", id } ).code == 0 );
        CHECK( run( { "mlts", "check", "--file", m, "--kind", kind, "--rel", swap } ).code == 1 );
    }
    CHECK( run( { "mlts", "check", "--file", m, "--kind", "event", "--rel", field } ).code == 0 );
    CHECK( run( { "mlts", "check", "--file", m, "--kind", "event", "--rel", trivial } ).code == 1 );
    std::string asym = write_temp( "asym.json", R"({"pairs":[["a","b"]]})" );
    CHECK( run( { "mlts", "check", "--file", m, "--kind", "state", "--rel", asym } ).code == 65 );
    CHECK( run( { "mlts", "check", "--file", m, "--kind", "other", "--rel", id } ).code == 64 );
}
