#pragma once

// Finite labelled transition systems and the bisimilarity engines:
// partition refinement, brute-force witness search, and a bounded
// stratified game on lazy trees.

#include "bisimlab/formula.hpp"
#include "bisimlab/trees.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace bisimlab
{

using StateId = std::size_t;
using LabelId = std::size_t;

class Lts
{
    std::vector<std::string> _states;
    std::vector<std::string> _labels;
    std::unordered_map<std::string, StateId> _state_index;
    std::unordered_map<std::string, LabelId> _label_index;
    std::vector<std::vector<std::vector<StateId>>> _succ; // [label][state], sorted

public:
    Lts() = default;
    /// Names must be unique; validation error otherwise.
    Lts( std::vector<std::string> states, std::vector<std::string> labels );

    void add_transition( LabelId label, StateId from, StateId to );
    void add_transition( const std::string& label, const std::string& from, const std::string& to );

    [[nodiscard]] std::size_t num_states() const { return _states.size(); }
    [[nodiscard]] std::size_t num_labels() const { return _labels.size(); }
    [[nodiscard]] std::size_t num_transitions() const;
    [[nodiscard]] const std::vector<std::string>& state_names() const { return _states; }
    [[nodiscard]] const std::vector<std::string>& labels() const { return _labels; }
    [[nodiscard]] const std::string& state_name( StateId s ) const { return _states.at( s ); }

    /// Domain error for unknown names.
    [[nodiscard]] StateId state( const std::string& name ) const;
    [[nodiscard]] LabelId label( const std::string& name ) const;
    [[nodiscard]] std::optional<LabelId> find_label( const std::string& name ) const;

    [[nodiscard]] const std::vector<StateId>& successors( LabelId a, StateId s ) const { return _succ[ a ][ s ]; }
};

/// States renamed "A:<name>" and "B:<name>"; labels merged by name.
Lts disjoint_sum( const Lts& a, const Lts& b );

struct TreeLts
{
    Lts lts;
    bool exhaustive = false; // true iff the Lts is the whole tree
    std::map<Seq, StateId> state_of;
};

inline const std::string tree_label = "l";

/// Nodes reachable from ε in at most `depth` steps, taking at most `bound`
/// children per node. States are named by their sequence, e.g. "<2,1>".
TreeLts lts_from_tree( const LazyTree& t, std::size_t depth, std::size_t bound );
TreeLts lts_from_tree( const FiniteTree& t );

/// The unfolding of a single-label Lts from `root`; nodes are sequences of
/// state ids along a path.
LazyTree lazy_tree_from_lts( const Lts& l, StateId root );

std::string disrupt_pair_name( const std::string& c, const std::string& d );
std::string disrupt_tail_name( const std::string& d );

/// C ▷ D over (C×D) ∪ D: c▷d → c'▷d on c → c', c▷d → d' on d → d',
/// d → d' on d → d'. Both inputs must have exactly one, shared, label.
Lts disrupt( const Lts& c, const Lts& d );

/// Block index per state, blocks numbered in order of first occurrence.
using Partition = std::vector<std::size_t>;

/// Successive partitions from the one-block partition to the coarsest
/// stable one; consecutive entries differ except that the last is the fixpoint.
std::vector<Partition> bisim_refinement_trace( const Lts& l );
Partition bisim_partition( const Lts& l );

std::size_t block_count( const Partition& p );
/// Renumbers blocks by first occurrence.
Partition normalize_partition( const Partition& p );

using Relation = std::set<std::pair<StateId, StateId>>;

/// Forth and back conditions for every pair and every label.
bool is_bisimulation( const Lts& l, const Relation& r );

inline constexpr std::size_t default_witness_cap = 8;

/// Backtracking search for a bisimulation containing (s, t). Resource error
/// when the Lts has more than `cap` states (at most 16 supported).
std::optional<Relation> bisim_witness_bruteforce( const Lts& l, StateId s, StateId t,
                                                  std::size_t cap = default_witness_cap );

/// A formula true at s and false at t, of modal depth at most the number of
/// refinement rounds separating them; nullopt iff s ∼ t.
std::optional<Formula> distinguishing_formula( const Lts& l, StateId s, StateId t );

struct Bisimilar
{
    std::vector<std::pair<std::string, std::string>> witness;
};

struct NotBisimilar
{
    Formula distinguisher;
};

struct BoundedBisimilar
{
    std::size_t depth = 0;
    std::size_t bound = 0;
};

using Verdict = std::variant<Bisimilar, NotBisimilar, BoundedBisimilar>;

/// "bisimilar", "not-bisimilar" or "bounded".
std::string verdict_name( const Verdict& v );

/// Bounded bisimulation game of `depth` rounds over at most `bound` children
/// per node. NotBisimilar only when every universal step it relied on saw
/// an exhaustive child list; Bisimilar only when, in addition, both subtrees
/// were fully explored within `depth`.
Verdict stratified_game( const LazyTree& t1, const Seq& s1, const LazyTree& t2, const Seq& s2, std::size_t depth,
                         std::size_t bound );

} // namespace bisimlab
