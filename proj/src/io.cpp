#include "bisimlab/io.hpp"

#include "bisimlab/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

namespace bisimlab
{

namespace
{

// A JSON value together with its path from the document root.
class Node
{
    const Json& _j;
    std::string _path;

public:
    Node( const Json& j, std::string path ) : _j{ j }, _path{ std::move( path ) } {}

    [[nodiscard]] const Json& json() const { return _j; }
    [[nodiscard]] const std::string& path() const { return _path; }

    [[noreturn]] void error( const std::string& message ) const { fail( ErrorKind::Data, _path + ": " + message ); }

    [[nodiscard]] Node at( const std::string& key ) const
    {
        expect_object();
        auto it = _j.find( key );
        if ( it == _j.end() )
            error( "missing key \"" + key + "\"" );
        return { *it, _path + "." + key };
    }

    [[nodiscard]] std::optional<Node> find( const std::string& key ) const
    {
        expect_object();
        auto it = _j.find( key );
        if ( it == _j.end() )
            return std::nullopt;
        return Node{ *it, _path + "." + key };
    }

    void expect_object() const
    {
        if ( !_j.is_object() )
            error( "expected an object" );
    }

    [[nodiscard]] std::vector<Node> items() const
    {
        if ( !_j.is_array() )
            error( "expected an array" );
        std::vector<Node> out;
        for ( std::size_t i = 0; i < _j.size(); ++i )
            out.emplace_back( _j[ i ], _path + "[" + std::to_string( i ) + "]" );
        return out;
    }

    [[nodiscard]] std::vector<std::pair<std::string, Node>> members() const
    {
        expect_object();
        std::vector<std::pair<std::string, Node>> out;
        for ( auto it = _j.begin(); it != _j.end(); ++it )
            out.emplace_back( it.key(), Node{ it.value(), _path + "." + it.key() } );
        return out;
    }

    [[nodiscard]] std::string string() const
    {
        if ( !_j.is_string() )
            error( "expected a string" );
        return _j.get<std::string>();
    }

    [[nodiscard]] Nat natural() const
    {
        if ( !_j.is_number_unsigned() )
            error( "expected a non-negative integer" );
        return _j.get<Nat>();
    }

    [[nodiscard]] bool boolean() const
    {
        if ( !_j.is_boolean() )
            error( "expected a boolean" );
        return _j.get<bool>();
    }

    [[nodiscard]] std::vector<std::string> strings() const
    {
        std::vector<std::string> out;
        for ( const Node& n : items() )
            out.push_back( n.string() );
        return out;
    }

    // Runs `f`, rewrapping its errors so they carry this node's path.
    template <typename F>
    auto guard( F&& f ) const
    {
        try
        {
            return f();
        }
        catch ( const Error& e )
        {
            if ( e.kind() == ErrorKind::Data && std::string_view( e.what() ).starts_with( "$" ) )
                throw;
            error( e.what() );
        }
    }
};

Node root( const Json& j )
{
    Node n{ j, "$" };
    if ( j.is_object() )
        if ( auto schema = n.find( "schema" ) )
            if ( schema->string() != schema_version )
                schema->error( "unsupported schema \"" + schema->json().dump() + "\"" );
    return n;
}

Json tagged( Json body )
{
    Json out = { { "schema", schema_version } };
    out.update( body );
    return out;
}

OrderDescriptor descriptor_at( const Node& n )
{
    if ( n.json().is_string() )
        return n.guard( [ & ] { return OrderDescriptor::parse( n.string() ); } );
    OrderDescriptor d;
    for ( const Node& a : n.at( "atoms" ).items() )
    {
        if ( auto fin = a.find( "fin" ) )
            d.atoms.push_back( fin->guard( [ & ] { return Atom::fin( fin->natural() ); } ) );
        else if ( auto omega = a.find( "omega" ); omega && omega->boolean() )
            d.atoms.push_back( Atom::omega() );
        else if ( auto star = a.find( "omegaStar" ); star && star->boolean() )
            d.atoms.push_back( Atom::omega_star() );
        else
            a.error( "expected {\"fin\":k}, {\"omega\":true} or {\"omegaStar\":true}" );
    }
    return d;
}

StateId state_at( const Node& n, const std::vector<std::string>& names )
{
    std::string name = n.string();
    auto it = std::ranges::find( names, name );
    if ( it == names.end() )
        n.error( "unknown state \"" + name + "\"" );
    return static_cast<StateId>( it - names.begin() );
}

StateSet set_at( const Node& n, const std::vector<std::string>& names )
{
    StateSet out = 0;
    for ( const Node& s : n.items() )
        out |= singleton( state_at( s, names ) );
    return out;
}

Json set_json( StateSet q, const std::vector<std::string>& names )
{
    Json out = Json::array();
    for ( StateId s = 0; s < names.size(); ++s )
        if ( ( q >> s ) & 1U )
            out.push_back( names[ s ] );
    return out;
}

bool is_partition( std::size_t n, const std::vector<StateSet>& sets )
{
    StateSet seen = 0;
    for ( StateSet q : sets )
    {
        if ( q == 0 || ( q & seen ) != 0 )
            return false;
        seen |= q;
    }
    return seen == ( n == 64 ? ~StateSet{ 0 } : ( StateSet{ 1 } << n ) - 1 );
}

Field field_at( const Node& n, const std::vector<std::string>& names )
{
    std::vector<StateSet> sets;
    for ( const Node& q : n.items() )
        sets.push_back( set_at( q, names ) );
    return n.guard( [ & ] {
        return is_partition( names.size(), sets ) ? Field( names.size(), sets )
                                                  : Field::from_family( names.size(), sets );
    } );
}

Json field_json( const Field& f, const std::vector<std::string>& names )
{
    Json out = Json::array();
    for ( StateSet a : f.atoms() )
        out.push_back( set_json( a, names ) );
    return out;
}

std::string dot_quote( const std::string& s )
{
    std::string out = "\"";
    for ( char c : s )
    {
        if ( c == '"' || c == '\\' )
            out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

Json parse_json_text( const std::string& text, const std::string& what )
{
    try
    {
        return Json::parse( text );
    }
    catch ( const Json::parse_error& e )
    {
        fail( ErrorKind::Data, what + ": malformed JSON: " + e.what() );
    }
}

Json read_json_file( const std::string& path )
{
    std::ifstream in( path );
    if ( !in )
        fail( ErrorKind::Data, path + ": cannot open file" );
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text( buffer.str(), path );
}

Json descriptor_to_json( const OrderDescriptor& d )
{
    Json atoms = Json::array();
    for ( const Atom& a : d.atoms )
        switch ( a.kind )
        {
        case Atom::Kind::Fin: atoms.push_back( { { "fin", a.size } } ); break;
        case Atom::Kind::Omega: atoms.push_back( { { "omega", true } } ); break;
        case Atom::Kind::OmegaStar: atoms.push_back( { { "omegaStar", true } } ); break;
        }
    return tagged( { { "atoms", atoms } } );
}

OrderDescriptor descriptor_from_json( const Json& j )
{
    return descriptor_at( root( j ) );
}

Json tree_to_json( const FiniteTree& t )
{
    Json nodes = Json::array();
    for ( const Seq& s : t.nodes() )
        nodes.push_back( s );
    return tagged( { { "nodes", nodes } } );
}

FiniteTree tree_from_json( const Json& j )
{
    Node n = root( j );
    Node nodes = n.at( "nodes" );
    std::set<Seq> out;
    for ( const Node& s : nodes.items() )
    {
        Seq seq;
        for ( const Node& x : s.items() )
            seq.push_back( x.natural() );
        out.insert( std::move( seq ) );
    }
    return nodes.guard( [ & ] { return FiniteTree( std::move( out ) ); } );
}

Json lts_to_json( const Lts& l )
{
    Json transitions = Json::object();
    for ( LabelId a = 0; a < l.num_labels(); ++a )
    {
        Json edges = Json::array();
        for ( StateId s = 0; s < l.num_states(); ++s )
            for ( StateId t : l.successors( a, s ) )
                edges.push_back( { l.state_name( s ), l.state_name( t ) } );
        transitions[ l.labels()[ a ] ] = edges;
    }
    return tagged( { { "states", l.state_names() }, { "labels", l.labels() }, { "transitions", transitions } } );
}

Lts lts_from_json( const Json& j )
{
    Node n = root( j );
    Node states = n.at( "states" );
    Node labels = n.at( "labels" );
    Lts out = n.guard( [ & ] { return Lts( states.strings(), labels.strings() ); } );
    if ( auto transitions = n.find( "transitions" ) )
        for ( const auto& [ label, edges ] : transitions->members() )
        {
            if ( !out.find_label( label ) )
                edges.error( "label \"" + label + "\" is not declared" );
            for ( const Node& e : edges.items() )
            {
                auto ends = e.items();
                if ( ends.size() != 2 )
                    e.error( "expected a [from, to] pair" );
                out.add_transition( out.label( label ), state_at( ends[ 0 ], out.state_names() ),
                                    state_at( ends[ 1 ], out.state_names() ) );
            }
        }
    return out;
}

Json mlts_to_json( const FiniteMlts& m )
{
    Json trans = Json::object();
    for ( LabelId a = 0; a < m.labels().size(); ++a )
    {
        Json row = Json::object();
        for ( StateId s = 0; s < m.size(); ++s )
            if ( m.transitions( a, s ) != 0 )
                row[ m.carrier()[ s ] ] = set_json( m.transitions( a, s ), m.carrier() );
        trans[ m.labels()[ a ] ] = row;
    }
    return tagged( { { "carrier", m.carrier() }, { "field", field_json( m.field(), m.carrier() ) }, { "trans", trans } } );
}

FiniteMlts mlts_from_json( const Json& j )
{
    Node n = root( j );
    Node carrier_node = n.at( "carrier" );
    std::vector<std::string> carrier = carrier_node.strings();
    if ( carrier.size() > max_mlts_states )
        carrier_node.error( "at most " + std::to_string( max_mlts_states ) + " states are supported" );
    if ( std::set<std::string>( carrier.begin(), carrier.end() ).size() != carrier.size() )
        carrier_node.error( "duplicate state names" );

    Field field = Field::powerset( carrier.size() );
    if ( auto f = n.find( "field" ) )
        field = field_at( *f, carrier );

    std::vector<std::string> labels;
    std::vector<std::vector<StateSet>> trans;
    if ( auto t = n.find( "trans" ) )
        for ( const auto& [ label, row ] : t->members() )
        {
            labels.push_back( label );
            std::vector<StateSet> sets( carrier.size(), 0 );
            for ( const auto& [ from, targets ] : row.members() )
            {
                auto it = std::ranges::find( carrier, from );
                if ( it == carrier.end() )
                    targets.error( "unknown state \"" + from + "\"" );
                sets[ static_cast<StateId>( it - carrier.begin() ) ] = set_at( targets, carrier );
            }
            trans.push_back( std::move( sets ) );
        }
    return n.guard( [ & ] { return FiniteMlts( carrier, labels, field, trans ); } );
}

StateRelation relation_from_json( const FiniteMlts& m, const Json& j )
{
    Node n = root( j );
    StateRelation r( m.size(), 0 );
    auto pairs = n.find( "pairs" );
    auto classes = n.find( "classes" );
    if ( !pairs && !classes )
        n.error( "expected \"pairs\" or \"classes\"" );
    if ( pairs )
        for ( const Node& p : pairs->items() )
        {
            auto ends = p.items();
            if ( ends.size() != 2 )
                p.error( "expected a [s, t] pair" );
            r[ state_at( ends[ 0 ], m.carrier() ) ] |= singleton( state_at( ends[ 1 ], m.carrier() ) );
        }
    if ( classes )
        for ( const Node& c : classes->items() )
        {
            StateSet q = set_at( c, m.carrier() );
            for ( StateId s = 0; s < m.size(); ++s )
                if ( ( q >> s ) & 1U )
                    r[ s ] |= q;
        }
    return r;
}

Json relation_to_json( const FiniteMlts& m, const StateRelation& r )
{
    Json pairs = Json::array();
    for ( StateId s = 0; s < m.size(); ++s )
        for ( StateId t = 0; t < m.size(); ++t )
            if ( ( r[ s ] >> t ) & 1U )
                pairs.push_back( { m.carrier()[ s ], m.carrier()[ t ] } );
    return tagged( { { "pairs", pairs } } );
}

Field field_from_json( const FiniteMlts& m, const Json& j )
{
    return field_at( root( j ).at( "field" ), m.carrier() );
}

Json field_to_json( const FiniteMlts& m, const Field& f )
{
    return tagged( { { "field", field_json( f, m.carrier() ) } } );
}

std::vector<CatalogEntry> catalog_from_json( const Json& j )
{
    Node n = root( j );
    Node list = j.is_object() ? n.at( "entries" ) : n;
    std::vector<CatalogEntry> out;
    for ( const Node& e : list.items() )
    {
        CatalogEntry entry{ descriptor_at( e.at( "descriptor" ) ), "" };
        if ( auto note = e.find( "note" ) )
            entry.note = note->string();
        out.push_back( std::move( entry ) );
    }
    return out;
}

Json catalog_to_json( const std::vector<CatalogEntry>& entries )
{
    Json list = Json::array();
    for ( const CatalogEntry& e : entries )
        list.push_back( { { "descriptor", e.descriptor.to_string() }, { "note", e.note } } );
    return tagged( { { "entries", list } } );
}

Json verdict_to_json( const Verdict& v )
{
    Json out = { { "verdict", verdict_name( v ) } };
    if ( const auto* b = std::get_if<Bisimilar>( &v ) )
    {
        Json witness = Json::array();
        for ( const auto& [ s, t ] : b->witness )
            witness.push_back( { s, t } );
        out[ "witness" ] = witness;
        out[ "witnessSize" ] = b->witness.size();
    }
    else if ( const auto* n = std::get_if<NotBisimilar>( &v ) )
    {
        out[ "formula" ] = n->distinguisher.to_string();
        out[ "modalDepth" ] = n->distinguisher.modal_depth();
    }
    else if ( const auto* bounded = std::get_if<BoundedBisimilar>( &v ) )
    {
        out[ "depth" ] = bounded->depth;
        out[ "bound" ] = bounded->bound;
    }
    return out;
}

Json entry_report_to_json( const EntryReport& e )
{
    Json out = {
        { "descriptor", e.entry.descriptor.to_string() },
        { "note", e.entry.note },
        { "isWellorder", e.is_wellorder },
        { "normalForm", { { "initial", e.form.initial.to_string() }, { "tail", e.form.tail } } },
        { "symbolicVerdict", { { "engine", "normal-form" }, { "bisimilar", e.symbolic_verdict } } },
        { "gameVerdict", { { "engine", "stratified-game" }, { "verdict", verdict_name( e.game_verdict ) } } },
        { "exactCheck", nullptr },
        { "millis", e.millis },
        { "failures", e.failures },
    };
    if ( e.exact_check )
        out[ "exactCheck" ] = { { "engine", "partition-refinement" },
                                { "bisimilar", e.exact_check->bisimilar },
                                { "agrees", e.exact_check->agrees } };
    return out;
}

Json report_to_json( const Report& r )
{
    Json entries = Json::array();
    for ( const EntryReport& e : r.entries )
        entries.push_back( entry_report_to_json( e ) );
    return tagged( {
        { "gameDepth", r.game_depth },
        { "gameBound", r.game_bound },
        { "entries", entries },
        { "failures", r.failure_count() },
    } );
}

void export_dot( const Lts& l, std::ostream& out )
{
    std::vector<std::string> names = l.state_names();
    std::ranges::sort( names );
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    for ( LabelId a = 0; a < l.num_labels(); ++a )
        for ( StateId s = 0; s < l.num_states(); ++s )
            for ( StateId t : l.successors( a, s ) )
                edges.emplace_back( l.state_name( s ), l.state_name( t ), l.labels()[ a ] );
    std::ranges::sort( edges );

    out << "digraph lts {\n";
    for ( const std::string& s : names )
        out << "  " << dot_quote( s ) << ";\n";
    for ( const auto& [ from, to, label ] : edges )
        out << "  " << dot_quote( from ) << " -> " << dot_quote( to ) << " [label=" << dot_quote( label ) << "];\n";
    out << "}\n";
}

void export_dot( const FiniteTree& t, std::ostream& out )
{
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> edges;
    for ( const Seq& s : t.nodes() )
    {
        names.push_back( seq_to_string( s ) );
        if ( !s.empty() )
            edges.emplace_back( seq_to_string( Seq( s.begin(), s.end() - 1 ) ), seq_to_string( s ) );
    }
    std::ranges::sort( names );
    std::ranges::sort( edges );

    out << "digraph tree {\n";
    for ( const std::string& s : names )
        out << "  " << dot_quote( s ) << ";\n";
    for ( const auto& [ from, to ] : edges )
        out << "  " << dot_quote( from ) << " -> " << dot_quote( to ) << ";\n";
    out << "}\n";
}

void export_dot( const TreeLts& t, std::ostream& out )
{
    if ( !t.exhaustive )
        fail( ErrorKind::Data, "tree is not finite within the materialization limits" );
    export_dot( t.lts, out );
}

} // namespace bisimlab
