#pragma once

#include "bisimlab/formula.hpp"
#include "bisimlab/lts.hpp"

#include <vector>

namespace bisimlab
{

/// Rank of every state over the union of all labels: the longest descent
/// for states that only reach acyclic parts, Top for states reaching a cycle.
std::vector<RankValue> state_ranks( const Lts& l );

/// Extension of a formula: one flag per state. Domain error for unknown labels.
/// phi[β] holds where β ≤ rank.
std::vector<bool> extension( const Lts& l, const Formula& f );

bool eval( const Lts& l, StateId s, const Formula& f );

/// phi[β] at a node of a lazy tree, read off its symbolic rank.
bool eval_depth( const LazyTree& t, const Seq& s, Ordinal beta );

/// phi[β] unfolded into diamonds and finite conjunctions: successor stages
/// become <label>, a limit stage ω·j becomes the conjunction of the stages
/// ω·(j-1)+i for i < fuel. Agrees with phi[β] on every finite Lts whose
/// state count is below `fuel`.
Formula expand_depth_formula( Ordinal beta, std::size_t fuel, const std::string& label = tree_label );

/// States are equivalent iff they agree on every formula of `fs`.
Partition logical_partition( const Lts& l, const std::vector<Formula>& fs );

/// One representative formula for every distinct extension reachable from T
/// by negation, binary conjunction and <a> for each label, with modal depth
/// at most `max_depth`.
std::vector<Formula> formula_closure( const Lts& l, std::size_t max_depth );

} // namespace bisimlab
