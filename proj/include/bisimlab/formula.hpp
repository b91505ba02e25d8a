#pragma once

#include "bisimlab/orders.hpp"

#include <string>
#include <vector>

namespace bisimlab
{

/// Hennessy–Milner formulas with finite conjunction, plus the symbolic
/// depth formula phi[β] standing for the ordinal-indexed family
/// phi_0 = T, phi_{β+1} = <l>phi_β, phi_λ = ⋀_{β<λ} phi_β.
class Formula
{
public:
    enum class Kind
    {
        Top,
        Not,
        And,
        Diamond,
        DepthAtLeast
    };

    static Formula top() { return Formula( Kind::Top ); }
    static Formula negate( Formula f );
    static Formula conj( std::vector<Formula> fs );
    static Formula diamond( std::string label, Formula f );
    static Formula depth_at_least( Ordinal beta );

    [[nodiscard]] Kind kind() const { return _kind; }
    [[nodiscard]] const std::vector<Formula>& operands() const { return _operands; }
    /// Operand of Not and Diamond.
    [[nodiscard]] const Formula& body() const { return _operands.front(); }
    [[nodiscard]] const std::string& label() const { return _label; }
    [[nodiscard]] Ordinal ordinal() const { return _ordinal; }

    /// Nesting depth of diamonds. phi[ω·m+k] counts as k when m = 0 and is
    /// reported as unbounded (SIZE_MAX) otherwise.
    [[nodiscard]] std::size_t modal_depth() const;
    [[nodiscard]] std::size_t size() const;

    /// `T`, `!f`, `(f & f & ...)`, `<l>f`, `phi[m.k]`; `()` is the empty conjunction.
    [[nodiscard]] std::string to_string() const;
    static Formula parse( const std::string& text );

    friend bool operator==( const Formula&, const Formula& ) = default;

private:
    explicit Formula( Kind kind ) : _kind{ kind } {}

    Kind _kind;
    std::vector<Formula> _operands;
    std::string _label;
    Ordinal _ordinal;
};

} // namespace bisimlab
