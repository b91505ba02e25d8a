#include "bisimlab/reduction.hpp"

#include "bisimlab/error.hpp"

#include <chrono>
#include <future>

namespace bisimlab
{

BisimNormalForm normal_form( const OrderDescriptor& d )
{
    OrderClass c = classify( d );
    return { c.ordinal, !c.well_order };
}

bool decide_bisim_symbolic( const OrderDescriptor& d1, const OrderDescriptor& d2 )
{
    return normal_form( d1 ) == normal_form( d2 );
}

ReducedPair reduce_map( const OrderDescriptor& d )
{
    return { lazy_tree_from_descriptor( d ), lazy_tree_from_descriptor( descriptor_sum( d, d ) ) };
}

namespace
{

ExactCheck exact_check( const ReducedPair& pair, Nat size, bool symbolic )
{
    // Depth and branching of T_d are bounded by the carrier size.
    std::size_t n = static_cast<std::size_t>( 2 * size + 1 );
    TreeLts a = lts_from_tree( pair.tree, n, n );
    TreeLts b = lts_from_tree( pair.doubled, n, n );
    if ( !a.exhaustive || !b.exhaustive )
        fail( ErrorKind::Resource, "finite descriptor tree did not materialize" );
    Lts sum = disjoint_sum( a.lts, b.lts );
    Partition p = bisim_partition( sum );
    std::string root = seq_to_string( {} );
    bool bisimilar = p[ sum.state( "A:" + root ) ] == p[ sum.state( "B:" + root ) ];
    return { bisimilar, bisimilar == symbolic };
}

} // namespace

EntryReport run_entry( const CatalogEntry& entry, std::size_t game_depth, std::size_t game_bound )
{
    auto start = std::chrono::steady_clock::now();
    EntryReport out;
    out.entry = entry;
    const OrderDescriptor& d = entry.descriptor;
    out.is_wellorder = classify( d ).well_order;
    out.form = normal_form( d );
    out.symbolic_verdict = decide_bisim_symbolic( d, descriptor_sum( d, d ) );
    if ( out.symbolic_verdict == out.is_wellorder )
        out.failures.push_back( d.atoms.empty()
                                        ? "identity violated: the empty order is a wellorder but T_d = T_{d+d} = {ε}"
                                        : "identity violated: symbolic verdict disagrees with the classification" );

    ReducedPair pair = reduce_map( d );
    out.game_verdict = stratified_game( pair.tree, {}, pair.doubled, {}, game_depth, game_bound );
    out.game_exact = !std::holds_alternative<BoundedBisimilar>( out.game_verdict );
    if ( out.game_exact && std::holds_alternative<Bisimilar>( out.game_verdict ) != out.symbolic_verdict )
        out.failures.push_back( "game verdict " + verdict_name( out.game_verdict ) + " contradicts the symbolic verdict" );

    if ( auto size = d.size() )
    {
        out.exact_check = exact_check( pair, *size, out.symbolic_verdict );
        if ( !out.exact_check->agrees )
            out.failures.push_back( "partition refinement contradicts the symbolic verdict" );
    }
    out.millis = std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - start ).count();
    return out;
}

std::size_t Report::failure_count() const
{
    std::size_t n = 0;
    for ( const EntryReport& e : entries )
        n += e.failures.size();
    return n;
}

Report run_catalog( const std::vector<CatalogEntry>& entries, std::size_t game_depth, std::size_t game_bound )
{
    if ( game_depth == 0 || game_bound == 0 )
        fail( ErrorKind::Domain, "game depth and bound must be at least 1" );
    std::vector<std::future<EntryReport>> jobs;
    jobs.reserve( entries.size() );
    for ( const CatalogEntry& e : entries )
        jobs.push_back( std::async( std::launch::async, run_entry, std::cref( e ), game_depth, game_bound ) );
    Report out{ game_depth, game_bound, {} };
    for ( auto& job : jobs )
        out.entries.push_back( job.get() );
    return out;
}

} // namespace bisimlab
