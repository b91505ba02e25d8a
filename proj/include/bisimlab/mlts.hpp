#pragma once

// Measurable labelled transition systems on finite carriers. A finite
// σ-algebra is a field of sets and is stored by its atoms; subsets of the
// carrier are bitmasks, so carriers hold at most 64 states.

#include "bisimlab/lts.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bisimlab
{

using StateSet = std::uint64_t;

inline constexpr std::size_t max_mlts_states = 64;

inline StateSet singleton( StateId s )
{
    return StateSet{ 1 } << s;
}

/// A field of subsets of {0..n-1}, given by the partition into its atoms.
class Field
{
    std::size_t _carrier_size = 0;
    std::vector<StateSet> _atoms; // nonempty, disjoint, covering; sorted

public:
    Field() = default;
    /// Validation error unless `atoms` partitions the carrier.
    Field( std::size_t carrier_size, std::vector<StateSet> atoms );

    static Field powerset( std::size_t carrier_size );
    static Field trivial( std::size_t carrier_size );
    /// Validation error unless the family is exactly a field (contains ∅ and
    /// the carrier, closed under complement and union).
    static Field from_family( std::size_t carrier_size, const std::vector<StateSet>& family );

    [[nodiscard]] std::size_t carrier_size() const { return _carrier_size; }
    [[nodiscard]] StateSet carrier() const;
    [[nodiscard]] const std::vector<StateSet>& atoms() const { return _atoms; }
    /// Q is a union of atoms.
    [[nodiscard]] bool contains( StateSet q ) const;
    /// Every member, 2^(#atoms) sets, ascending.
    [[nodiscard]] std::vector<StateSet> members() const;
    /// other ⊆ this as families of sets.
    [[nodiscard]] bool includes( const Field& other ) const;

    friend bool operator==( const Field&, const Field& ) = default;
};

/// Least field containing the generators: unions of the atoms of the
/// partition they generate.
Field field_closure( std::size_t carrier_size, const std::vector<StateSet>& generators );

/// Row s holds the states related to s.
using StateRelation = std::vector<StateSet>;

StateRelation identity_relation( std::size_t n );
StateRelation full_relation( std::size_t n );
bool is_symmetric( const StateRelation& r );
/// Agreement relation R(Ξ) of a field: same atom.
StateRelation agreement_relation( const Field& f );
/// Relation whose classes are the blocks of a partition.
StateRelation partition_relation( const Partition& p );

class FiniteMlts
{
    std::vector<std::string> _carrier;
    std::vector<std::string> _labels;
    Field _field;
    std::vector<std::vector<StateSet>> _trans; // [label][state] = T̃_a(s)

public:
    /// Validates the carrier size, that every T̃_a(s) is measurable, and that
    /// the field is stable under every pre_a; the offending label and set are
    /// reported otherwise.
    FiniteMlts( std::vector<std::string> carrier, std::vector<std::string> labels, Field field,
                std::vector<std::vector<StateSet>> trans );

    /// The given Lts with the powerset field.
    static FiniteMlts from_lts( const Lts& l );
    /// The given Lts with the least field that contains `generators`, every
    /// transition set, and is stable under every pre_a.
    static FiniteMlts from_lts( const Lts& l, const std::vector<StateSet>& generators );

    [[nodiscard]] std::size_t size() const { return _carrier.size(); }
    [[nodiscard]] const std::vector<std::string>& carrier() const { return _carrier; }
    [[nodiscard]] const std::vector<std::string>& labels() const { return _labels; }
    [[nodiscard]] const Field& field() const { return _field; }
    [[nodiscard]] StateSet transitions( LabelId a, StateId s ) const { return _trans[ a ][ s ]; }
    [[nodiscard]] LabelId label( const std::string& name ) const;
    [[nodiscard]] StateId state( const std::string& name ) const;

    [[nodiscard]] Lts underlying_lts() const;
};

/// Carrier: pairs (tree i, node s), named "T<i>:<seq>"; one label "l"
/// following the tree edges; powerset field.
FiniteMlts mlts_from_trees( const std::vector<FiniteTree>& trees );
StateId tree_state( const FiniteMlts& m, std::size_t tree, const Seq& s );

/// {s : T̃_a(s) ∩ q ≠ ∅}.
StateSet pre_image( const FiniteMlts& m, LabelId label, StateSet q );
StateSet pre_image( const FiniteMlts& m, const std::string& label, StateSet q );

/// Σ(R): members of the field that are R-closed. Validation error if r is
/// not symmetric.
Field r_closed_field( const FiniteMlts& m, const StateRelation& r );

/// Λ must be a sub-field of the MLTS field (validation error otherwise);
/// true iff Λ is stable under every pre_a.
bool check_event_bisimulation( const FiniteMlts& m, const Field& lambda );
bool check_event_bisimulation( const FiniteMlts& m, const std::vector<StateSet>& lambda );
bool check_state_bisimulation( const FiniteMlts& m, const StateRelation& r );
bool check_traditional_bisimulation( const FiniteMlts& m, const StateRelation& r );

/// Least sub-field stable under every pre_a: generated from {∅, S} by pre_a
/// and Boolean operations. Every stable sub-field contains it.
Field least_stable_subfield( const FiniteMlts& m );

struct Bisimilarities
{
    StateRelation traditional;
    StateRelation state;
    StateRelation event;
};

/// Traditional and state bisimilarity as greatest fixpoints from the full
/// relation; event bisimilarity as R(least stable sub-field).
Bisimilarities maximal_bisimilarities( const FiniteMlts& m );

/// Pairwise inclusion a ⊆ b.
bool relation_included( const StateRelation& a, const StateRelation& b );

} // namespace bisimlab
