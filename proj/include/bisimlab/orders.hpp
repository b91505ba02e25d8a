#pragma once

// Countable strict linear orders: finite explicit relations, finitely
// supported relation patches on ℕ, and symbolic sums of atoms
// (finite chains, ω, ω*).

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bisimlab
{

using Nat = std::uint64_t;

/// A finite binary relation given by its carrier and the set of related pairs.
struct ExplicitOrder
{
    std::vector<Nat> carrier;
    std::set<std::pair<Nat, Nat>> pairs;

    [[nodiscard]] bool less( Nat a, Nat b ) const { return pairs.contains( { a, b } ); }

    /// The usual order on the given carrier.
    static ExplicitOrder chain( std::vector<Nat> carrier );
};

/// Irreflexive, transitive and total. Pairs mentioning elements outside
/// the carrier (or duplicate carrier entries) raise a data error.
bool validate_linear_order( const ExplicitOrder& rel );

/// A point of 2^(ℕ×ℕ) with finite support; unset bits read as 0.
class RelationPatch
{
    std::map<std::pair<Nat, Nat>, bool> _bits;

public:
    RelationPatch() = default;
    RelationPatch( std::initializer_list<std::pair<const std::pair<Nat, Nat>, bool>> bits ) : _bits( bits ) {}

    [[nodiscard]] bool get( Nat a, Nat b ) const;
    void set( Nat a, Nat b, bool value ) { _bits[ { a, b } ] = value; }
    void flip( Nat a, Nat b ) { set( a, b, !get( a, b ) ); }

    [[nodiscard]] const std::map<std::pair<Nat, Nat>, bool>& bits() const { return _bits; }
    /// Elements occurring in some pair whose bit is 1.
    [[nodiscard]] std::set<Nat> support() const;
};

/// A relation on an initial segment {0..n-1} of ℕ (finite carriers are
/// relabeled by position) or on all of ℕ (patches).
class IndexedRelation
{
    std::optional<RelationPatch> _patch;
    std::optional<ExplicitOrder> _order;

public:
    static IndexedRelation from_patch( RelationPatch patch );
    /// Carrier element carrier[i] becomes i.
    static IndexedRelation from_order( ExplicitOrder order );

    /// nullopt for relations on all of ℕ.
    [[nodiscard]] std::optional<Nat> domain_size() const;
    [[nodiscard]] bool in_domain( Nat n ) const;
    /// Throws a domain error outside the domain.
    [[nodiscard]] bool operator()( Nat n, Nat m ) const;
};

/// The parity-interleaved sum: evens carry a copy of the first relation,
/// odds a copy of the second, and every even lies below every odd.
class InterleavedSum
{
    IndexedRelation _evens;
    IndexedRelation _odds;

public:
    InterleavedSum( IndexedRelation evens, IndexedRelation odds )
            : _evens{ std::move( evens ) }, _odds{ std::move( odds ) }
    {}

    [[nodiscard]] bool in_domain( Nat n ) const;
    [[nodiscard]] bool operator()( Nat n, Nat m ) const;

    /// Restriction to the (finite) combined domain; domain error when either
    /// summand lives on all of ℕ.
    [[nodiscard]] ExplicitOrder to_explicit() const;
};

InterleavedSum sum_interleave( IndexedRelation r, IndexedRelation r2 );

/// Ordinals below ω², written ω·m + k.
struct Ordinal
{
    Nat m = 0;
    Nat k = 0;

    constexpr Ordinal() = default;
    constexpr Ordinal( Nat omega_coeff, Nat finite ) : m{ omega_coeff }, k{ finite } {}
    static constexpr Ordinal finite( Nat k ) { return { 0, k }; }
    static constexpr Ordinal omega() { return { 1, 0 }; }

    [[nodiscard]] constexpr bool is_limit() const { return m > 0 && k == 0; }
    [[nodiscard]] std::string to_string() const;

    friend constexpr auto operator<=>( const Ordinal&, const Ordinal& ) = default;
};

/// Ordinal addition: absorbs the left finite part when the right summand is infinite.
constexpr Ordinal operator+( Ordinal a, Ordinal b )
{
    return b.m > 0 ? Ordinal{ a.m + b.m, b.k } : Ordinal{ a.m, a.k + b.k };
}

struct Atom
{
    enum class Kind
    {
        Fin,
        Omega,
        OmegaStar
    };

    Kind kind = Kind::Fin;
    Nat size = 1; // only meaningful for Fin

    static Atom fin( Nat k );
    static Atom omega() { return { Kind::Omega, 0 }; }
    static Atom omega_star() { return { Kind::OmegaStar, 0 }; }

    [[nodiscard]] bool is_finite() const { return kind == Kind::Fin; }

    friend bool operator==( const Atom&, const Atom& ) = default;
};

/// Ordered sum of atoms, left to right. Not normalized implicitly.
struct OrderDescriptor
{
    std::vector<Atom> atoms;

    [[nodiscard]] bool is_finite() const;
    /// Number of elements; nullopt when infinite.
    [[nodiscard]] std::optional<Nat> size() const;
    [[nodiscard]] bool has_omega_star() const;

    /// Text form: atoms joined by '+', k = Fin(k), w = Omega, w* = OmegaStar.
    [[nodiscard]] std::string to_string() const;
    static OrderDescriptor parse( const std::string& text );

    friend bool operator==( const OrderDescriptor&, const OrderDescriptor& ) = default;
};

struct OrderClass
{
    bool well_order = true;
    /// Order type for wellorders, type of the maximal well-ordered initial
    /// segment otherwise.
    Ordinal ordinal;

    static OrderClass wellorder( Ordinal type ) { return { true, type }; }
    static OrderClass non_wellorder( Ordinal segment ) { return { false, segment }; }

    friend bool operator==( const OrderClass&, const OrderClass& ) = default;
};

OrderDescriptor descriptor_sum( const OrderDescriptor& d1, const OrderDescriptor& d2 );
OrderDescriptor descriptor_normalize( const OrderDescriptor& d );
OrderClass classify( const OrderDescriptor& d );

/// An element of a descriptor's carrier. For ω* atoms, `inner` counts the
/// elements above it inside the atom; otherwise it counts those below.
struct Element
{
    std::size_t atom = 0;
    Nat inner = 0;

    friend auto operator<=>( const Element&, const Element& ) = default;
};

bool is_element( const OrderDescriptor& d, Element e );

/// Strict order of the descriptor between two of its elements.
bool precedes( const OrderDescriptor& d, Element a, Element b );

/// The first `bound` elements of the fixed enumeration. Round r lists,
/// in atom order, inner index r of every atom that has one; on a single
/// atom this is plain inner-index order.
std::vector<Element> enumerate_elements( const OrderDescriptor& d, std::size_t bound );

/// Position of an element in the fixed enumeration (its natural code).
Nat element_code( const OrderDescriptor& d, Element e );
/// Inverse of element_code; nullopt for codes past the end of a finite carrier.
std::optional<Element> element_from_code( const OrderDescriptor& d, Nat code );

/// Descriptor of the elements strictly below e.
OrderDescriptor downset( const OrderDescriptor& d, Element e );

/// Maps an element of downset(d, e) back to the element of d it denotes.
Element lift_from_downset( const OrderDescriptor& d, Element e, Element below );

} // namespace bisimlab
