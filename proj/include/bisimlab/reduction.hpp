#pragma once

// The map d ↦ (T_d, T_{d+d}), the normal-form decision of bisimilarity for
// descriptor trees, and catalog runs that cross-check it against the other
// engines.

#include "bisimlab/lts.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bisimlab
{

/// Bisimilarity type of T_d at ε: the full order type for wellorders, the
/// maximal well-ordered initial segment plus a tail flag otherwise.
struct BisimNormalForm
{
    Ordinal initial;
    bool tail = false; // d has an ω* atom

    friend bool operator==( const BisimNormalForm&, const BisimNormalForm& ) = default;
};

BisimNormalForm normal_form( const OrderDescriptor& d );

/// T_{d1},ε ∼ T_{d2},ε decided through normal forms.
bool decide_bisim_symbolic( const OrderDescriptor& d1, const OrderDescriptor& d2 );

struct ReducedPair
{
    LazyTree tree;    // T_d
    LazyTree doubled; // T_{d+d}
};

ReducedPair reduce_map( const OrderDescriptor& d );

struct CatalogEntry
{
    OrderDescriptor descriptor;
    std::string note;
};

/// Partition refinement on the materialized trees of a finite entry.
struct ExactCheck
{
    bool bisimilar = false;
    bool agrees = false;
};

struct EntryReport
{
    CatalogEntry entry;
    bool is_wellorder = false;
    BisimNormalForm form;
    bool symbolic_verdict = false; // normal-form engine
    Verdict game_verdict;          // stratified game
    bool game_exact = false;       // game verdict is not bounded
    std::optional<ExactCheck> exact_check;
    double millis = 0;
    std::vector<std::string> failures;
};

struct Report
{
    std::size_t game_depth = 0;
    std::size_t game_bound = 0;
    std::vector<EntryReport> entries;

    [[nodiscard]] std::size_t failure_count() const;
};

/// Entries are independent and evaluated in parallel; the report keeps
/// catalog order. Domain error unless depth and bound are at least 1.
Report run_catalog( const std::vector<CatalogEntry>& entries, std::size_t game_depth, std::size_t game_bound );

EntryReport run_entry( const CatalogEntry& entry, std::size_t game_depth, std::size_t game_bound );

} // namespace bisimlab
