#pragma once

// Trees of finite sequences of naturals: explicit prefix-closed node sets,
// on-demand trees of decreasing sequences, ranks and canonical forms.

#include "bisimlab/orders.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace bisimlab
{

using Seq = std::vector<Nat>;

std::string seq_to_string( const Seq& s );

/// A finite pointed tree: prefix-closed, always contains ε.
class FiniteTree
{
    std::set<Seq> _nodes;
    std::map<Seq, std::vector<Nat>> _children;

public:
    /// Throws a validation error unless the set contains ε and is prefix-closed.
    explicit FiniteTree( std::set<Seq> nodes );
    FiniteTree() : FiniteTree( std::set<Seq>{ Seq{} } ) {}

    [[nodiscard]] const std::set<Seq>& nodes() const { return _nodes; }
    [[nodiscard]] std::size_t size() const { return _nodes.size(); }
    [[nodiscard]] bool contains( const Seq& s ) const { return _nodes.contains( s ); }
    /// Child steps n with s⌢n in the tree, ascending. Domain error if s is not a node.
    [[nodiscard]] const std::vector<Nat>& children( const Seq& s ) const;

    friend bool operator==( const FiniteTree& a, const FiniteTree& b ) { return a._nodes == b._nodes; }
};

/// Origin tag for trees generated from something other than an order or a
/// finite tree (e.g. the unfolding of an Lts); carries no rank information.
struct OpaqueOrigin
{
    std::string description;
};

struct Children
{
    std::vector<Nat> items;
    bool exhaustive = false;
};

/// A tree given by a membership oracle and a bounded children generator.
/// Generators hold no cursor state, so queries may run concurrently.
class LazyTree
{
public:
    using Origin = std::variant<OrderDescriptor, RelationPatch, FiniteTree, OpaqueOrigin>;
    using Membership = std::function<bool( const Seq& )>;
    using Generator = std::function<Children( const Seq&, std::size_t )>;

    LazyTree( Origin origin, Membership membership, Generator generator )
            : _origin{ std::make_shared<const Origin>( std::move( origin ) ) },
              _membership{ std::move( membership ) }, _generator{ std::move( generator ) }
    {}

    [[nodiscard]] bool contains( const Seq& s ) const { return _membership( s ); }
    /// Up to `bound` children of a node; domain error for non-members.
    [[nodiscard]] Children children( const Seq& s, std::size_t bound ) const;
    [[nodiscard]] const Origin& origin() const { return *_origin; }

private:
    std::shared_ptr<const Origin> _origin;
    Membership _membership;
    Generator _generator;
};

/// Decreasing sequences of an explicit order: ε, singletons, and every s
/// with s^{|s|-1} R … R s^0. Validation error if `o` is not a strict linear order.
FiniteTree tree_from_order( const ExplicitOrder& o );

/// Same construction for a descriptor; nodes are sequences of element codes.
LazyTree lazy_tree_from_descriptor( const OrderDescriptor& d );
/// T_R for a relation on ℕ given by a finite patch.
LazyTree lazy_tree_from_patch( const RelationPatch& patch );
LazyTree lazy_tree_from_finite( const FiniteTree& t );

/// s ∈ T_R read directly off the bits (s^j, s^{j-1}), 0 < j < |s|.
bool membership_local( const RelationPatch& patch, const Seq& s );

/// Rank of a node: Ord(α) for wellfounded nodes, Top when descent is unbounded.
struct RankValue
{
    bool top = false;
    Ordinal ord;

    static RankValue of( Ordinal o ) { return { false, o }; }
    static RankValue infinite() { return { true, {} }; }

    /// β ≤ rank, with Top above everything.
    [[nodiscard]] bool at_least( Ordinal beta ) const { return top || beta <= ord; }

    friend bool operator==( const RankValue&, const RankValue& ) = default;
};

std::string to_string( const RankValue& r );

RankValue rank( const FiniteTree& t, const Seq& s );
/// Symbolic for descriptor trees, exact for patch and finite-origin trees;
/// unsupported for opaque origins.
RankValue rank( const LazyTree& t, const Seq& s );

/// Recursive set of child forms; multiplicity is erased, so two finite trees
/// are bisimilar at their roots iff their forms are equal.
struct CanonicalTree
{
    std::vector<CanonicalTree> children; // sorted, duplicate-free

    [[nodiscard]] std::string to_string() const;
    /// A tree with this form, children numbered 0,1,2,… at every node.
    [[nodiscard]] FiniteTree to_tree() const;
};

bool operator==( const CanonicalTree& a, const CanonicalTree& b );
bool operator<( const CanonicalTree& a, const CanonicalTree& b );

CanonicalTree canonical_form( const FiniteTree& t );
CanonicalTree canonical_form( const FiniteTree& t, const Seq& s );

/// Truncated ω-expansion: every child step n is duplicated into (n, i) for
/// i < k, with the pair coded as n·k + i. Domain error for k = 0.
FiniteTree omega_expansion_truncated( const FiniteTree& t, Nat k );

} // namespace bisimlab
