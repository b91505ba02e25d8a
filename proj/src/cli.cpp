#include "bisimlab/cli.hpp"

#include "bisimlab/error.hpp"
#include "bisimlab/io.hpp"
#include "bisimlab/reduction.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace bisimlab
{

namespace
{

struct Options
{
    bool json = false;
    std::string descriptor;
    std::string file;
    std::string a, sa, b, sb;
    std::string engine = "pr";
    std::string catalog;
    std::string out_path;
    std::string kind;
    std::string rel;
    std::size_t depth = 4;
    std::size_t bound = 6;
};

class Runner
{
    const Options& _o;
    std::ostream& _out;
    bool _descriptor_given;

    void emit( const Json& j, const std::string& human )
    {
        if ( _o.json )
            _out << j.dump( 2 ) << '\n';
        else
            _out << human;
    }

    void require_input()
    {
        if ( _o.file.empty() && _o.descriptor.empty() && !_descriptor_given )
            fail( ErrorKind::Usage, "one of --descriptor or --file is required" );
    }

    OrderDescriptor descriptor_input()
    {
        require_input();
        if ( !_o.file.empty() )
            return descriptor_from_json( read_json_file( _o.file ) );
        return OrderDescriptor::parse( _o.descriptor );
    }

    // The tree named on the command line, materialized within depth and bound.
    TreeLts tree_input()
    {
        require_input();
        if ( !_o.file.empty() )
            return lts_from_tree( tree_from_json( read_json_file( _o.file ) ) );
        return lts_from_tree( lazy_tree_from_descriptor( OrderDescriptor::parse( _o.descriptor ) ), _o.depth,
                              _o.bound );
    }

    static std::string yes_no( bool b ) { return b ? "yes" : "no"; }

    static std::string class_text( const OrderDescriptor& d )
    {
        OrderClass c = classify( d );
        return c.well_order ? "wellorder of type " + c.ordinal.to_string()
                            : "non-wellorder, maximal well-ordered initial segment " + c.ordinal.to_string();
    }

public:
    Runner( const Options& o, std::ostream& out, bool descriptor_given )
            : _o{ o }, _out{ out }, _descriptor_given{ descriptor_given }
    {}

    int order_validate()
    {
        OrderDescriptor d = descriptor_input();
        OrderClass c = classify( d );
        Json j = { { "schema", schema_version },
                   { "descriptor", d.to_string() },
                   { "valid", true },
                   { "isWellorder", c.well_order } };
        emit( j, "valid: " + ( d.atoms.empty() ? std::string( "(empty order)" ) : d.to_string() ) + "\n" );
        return exit_ok;
    }

    int order_print()
    {
        OrderDescriptor d = descriptor_input();
        OrderDescriptor n = descriptor_normalize( d );
        BisimNormalForm f = normal_form( d );
        auto size = d.size();
        Json j = descriptor_to_json( d );
        j[ "descriptor" ] = d.to_string();
        j[ "normalized" ] = n.to_string();
        j[ "size" ] = size ? Json( *size ) : Json( nullptr );
        j[ "isWellorder" ] = classify( d ).well_order;
        j[ "normalForm" ] = { { "initial", f.initial.to_string() }, { "tail", f.tail } };
        std::ostringstream human;
        human << "descriptor: " << d.to_string() << "\n"
              << "normalized: " << n.to_string() << "\n"
              << "size: " << ( size ? std::to_string( *size ) : "infinite" ) << "\n"
              << "class: " << class_text( d ) << "\n"
              << "normal form: (" << f.initial.to_string() << ", " << ( f.tail ? "tail" : "no tail" ) << ")\n";
        emit( j, human.str() );
        return exit_ok;
    }

    int tree_build()
    {
        TreeLts t = tree_input();
        std::set<Seq> nodes;
        for ( const auto& [ s, id ] : t.state_of )
            nodes.insert( s );
        Json j = tree_to_json( FiniteTree( nodes ) );
        j[ "exhaustive" ] = t.exhaustive;
        emit( j, "nodes: " + std::to_string( nodes.size() ) + "\nexhaustive: " + yes_no( t.exhaustive ) + "\n" );
        return exit_ok;
    }

    int tree_dot()
    {
        export_dot( tree_input(), _out );
        return exit_ok;
    }

    int bisim_check()
    {
        Lts a = lts_from_json( read_json_file( _o.a ) );
        Lts b = lts_from_json( read_json_file( _o.b ) );
        StateId sa = a.state( _o.sa );
        StateId sb = b.state( _o.sb );
        Lts sum = disjoint_sum( a, b );
        StateId x = sum.state( "A:" + _o.sa );
        StateId y = sum.state( "B:" + _o.sb );

        Verdict v = BoundedBisimilar{ _o.depth, _o.bound };
        if ( _o.engine == "pr" )
        {
            Partition p = bisim_partition( sum );
            if ( p[ x ] == p[ y ] )
            {
                Bisimilar w;
                for ( StateId s = 0; s < sum.num_states(); ++s )
                    for ( StateId t = 0; t < sum.num_states(); ++t )
                        if ( p[ s ] == p[ t ] )
                            w.witness.emplace_back( sum.state_name( s ), sum.state_name( t ) );
                v = w;
            }
            else
                v = NotBisimilar{ *distinguishing_formula( sum, x, y ) };
        }
        else if ( _o.engine == "brute" )
        {
            if ( auto r = bisim_witness_bruteforce( sum, x, y, 16 ) )
            {
                Bisimilar w;
                for ( const auto& [ s, t ] : *r )
                    w.witness.emplace_back( sum.state_name( s ), sum.state_name( t ) );
                v = w;
            }
            else
                v = NotBisimilar{ *distinguishing_formula( sum, x, y ) };
        }
        else
            v = stratified_game( lazy_tree_from_lts( a, sa ), {}, lazy_tree_from_lts( b, sb ), {}, _o.depth,
                                 _o.bound );

        Json j = verdict_to_json( v );
        j[ "schema" ] = schema_version;
        j[ "engine" ] = _o.engine;
        std::string human = "verdict: " + verdict_name( v ) + " (engine " + _o.engine + ")\n";
        if ( const auto* w = std::get_if<Bisimilar>( &v ) )
        {
            human += "witness size: " + std::to_string( w->witness.size() ) + "\n";
            return emit( j, human ), exit_ok;
        }
        if ( const auto* n = std::get_if<NotBisimilar>( &v ) )
        {
            human += "distinguishing formula: " + n->distinguisher.to_string() + "\n";
            return emit( j, human ), exit_negative;
        }
        human += "bounded to depth " + std::to_string( _o.depth ) + ", bound " + std::to_string( _o.bound ) + "\n";
        return emit( j, human ), exit_inconclusive;
    }

    int reduce()
    {
        EntryReport e = run_entry( { OrderDescriptor::parse( _o.descriptor ), "" }, _o.depth, _o.bound );
        Json j = entry_report_to_json( e );
        j[ "schema" ] = schema_version;
        std::ostringstream human;
        human << "descriptor: " << e.entry.descriptor.to_string() << "\n"
              << "class: " << class_text( e.entry.descriptor ) << "\n"
              << "symbolic: T_d " << ( e.symbolic_verdict ? "~" : "!~" ) << " T_{d+d}\n"
              << "game: " << verdict_name( e.game_verdict ) << " (depth " << _o.depth << ", bound " << _o.bound
              << ")\n";
        if ( e.exact_check )
            human << "partition refinement: " << ( e.exact_check->bisimilar ? "bisimilar" : "not bisimilar" ) << "\n";
        for ( const std::string& f : e.failures )
            human << "FAILURE: " << f << "\n";
        emit( j, human.str() );
        return e.symbolic_verdict ? exit_ok : exit_negative;
    }

    int suite_run()
    {
        Report r = run_catalog( catalog_from_json( read_json_file( _o.catalog ) ), _o.depth, _o.bound );
        Json j = report_to_json( r );
        std::ofstream file( _o.out_path );
        if ( !file )
            fail( ErrorKind::Data, _o.out_path + ": cannot write report" );
        file << j.dump( 2 ) << '\n';
        Json summary = { { "schema", schema_version },
                         { "entries", r.entries.size() },
                         { "failures", r.failure_count() },
                         { "report", _o.out_path } };
        emit( summary, "entries: " + std::to_string( r.entries.size() ) +
                               "\nfailures: " + std::to_string( r.failure_count() ) + "\nreport: " + _o.out_path +
                               "\n" );
        return r.failure_count() == 0 ? exit_ok : exit_negative;
    }

    int mlts_check()
    {
        FiniteMlts m = mlts_from_json( read_json_file( _o.file ) );
        Json rel = read_json_file( _o.rel );
        bool holds = false;
        if ( _o.kind == "event" )
            holds = check_event_bisimulation( m, field_from_json( m, rel ) );
        else
        {
            StateRelation r = relation_from_json( m, rel );
            holds = _o.kind == "state" ? check_state_bisimulation( m, r ) : check_traditional_bisimulation( m, r );
        }
        Json j = { { "schema", schema_version }, { "kind", _o.kind }, { "bisimulation", holds } };
        emit( j, _o.kind + " bisimulation: " + yes_no( holds ) + "\n" );
        return holds ? exit_ok : exit_negative;
    }
};

} // namespace

int dispatch( const std::vector<std::string>& args, std::ostream& out, std::ostream& err )
{
    Options o;
    CLI::App app{ "Bisimilarity of trees of decreasing sequences and finite transition systems", "bisimlab" };
    app.require_subcommand( 1 );
    app.fallthrough();
    app.add_flag( "--json", o.json, "Print JSON instead of text" );

    auto add_descriptor_input = [ & ]( CLI::App* cmd ) {
        auto* d = cmd->add_option( "--descriptor", o.descriptor, "Order descriptor, e.g. 3+w*" );
        auto* f = cmd->add_option( "--file", o.file, "JSON input file" );
        d->excludes( f );
    };
    auto add_limits = [ & ]( CLI::App* cmd ) {
        cmd->add_option( "--depth", o.depth, "Exploration depth" )->check( CLI::PositiveNumber );
        cmd->add_option( "--bound", o.bound, "Children explored per node" )->check( CLI::PositiveNumber );
    };

    auto* order = app.add_subcommand( "order", "Descriptor utilities" )->require_subcommand( 1 );
    auto* order_validate = order->add_subcommand( "validate", "Check a descriptor" );
    auto* order_print = order->add_subcommand( "print", "Describe a descriptor" );
    add_descriptor_input( order_validate );
    add_descriptor_input( order_print );

    auto* tree = app.add_subcommand( "tree", "Tree of decreasing sequences" )->require_subcommand( 1 );
    auto* tree_build = tree->add_subcommand( "build", "Materialize a tree" );
    auto* tree_dot = tree->add_subcommand( "dot", "Export a finite tree as DOT" );
    for ( auto* cmd : { tree_build, tree_dot } )
    {
        add_descriptor_input( cmd );
        add_limits( cmd );
    }

    auto* bisim = app.add_subcommand( "bisim", "Bisimilarity of two pointed systems" )->require_subcommand( 1 );
    auto* bisim_check = bisim->add_subcommand( "check", "Decide s ~ t" );
    bisim_check->add_option( "--a", o.a, "First Lts JSON" )->required();
    bisim_check->add_option( "--sa", o.sa, "State of the first Lts" )->required();
    bisim_check->add_option( "--b", o.b, "Second Lts JSON" )->required();
    bisim_check->add_option( "--sb", o.sb, "State of the second Lts" )->required();
    bisim_check->add_option( "--engine", o.engine, "pr, brute or game" )
            ->check( CLI::IsMember( { "pr", "brute", "game" } ) );
    add_limits( bisim_check );

    auto* reduce = app.add_subcommand( "reduce", "Compare T_d with T_{d+d}" );
    reduce->add_option( "--descriptor", o.descriptor, "Order descriptor" )->required();
    add_limits( reduce );

    auto* suite = app.add_subcommand( "suite", "Catalog experiments" )->require_subcommand( 1 );
    auto* suite_run = suite->add_subcommand( "run", "Run a catalog" );
    suite_run->add_option( "--catalog", o.catalog, "Catalog JSON" )->required();
    suite_run->add_option( "--out", o.out_path, "Report JSON to write" )->required();
    add_limits( suite_run );

    auto* mlts = app.add_subcommand( "mlts", "Measurable systems" )->require_subcommand( 1 );
    auto* mlts_check = mlts->add_subcommand( "check", "Check a candidate bisimulation" );
    mlts_check->add_option( "--file", o.file, "MLTS JSON" )->required();
    mlts_check->add_option( "--kind", o.kind, "event, state or traditional" )
            ->required()
            ->check( CLI::IsMember( { "event", "state", "traditional" } ) );
    mlts_check->add_option( "--rel", o.rel, "Relation or field JSON" )->required();

    try
    {
        std::vector<std::string> reversed( args.rbegin(), args.rend() );
        app.parse( reversed );
    }
    catch ( const CLI::ParseError& e )
    {
        int code = app.exit( e, out, err );
        return code == 0 ? exit_ok : exit_usage;
    }

    // An empty --descriptor is the empty order.
    bool descriptor_given = false;
    for ( auto* cmd : { order_validate, order_print, tree_build, tree_dot } )
        descriptor_given = descriptor_given || cmd->count( "--descriptor" ) > 0;
    Runner run( o, out, descriptor_given );
    try
    {
        if ( *order_validate )
            return run.order_validate();
        if ( *order_print )
            return run.order_print();
        if ( *tree_build )
            return run.tree_build();
        if ( *tree_dot )
            return run.tree_dot();
        if ( *bisim_check )
            return run.bisim_check();
        if ( *reduce )
            return run.reduce();
        if ( *suite_run )
            return run.suite_run();
        if ( *mlts_check )
            return run.mlts_check();
    }
    catch ( const Error& e )
    {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::Usage ? exit_usage : exit_data;
    }
    return exit_usage;
}

} // namespace bisimlab
