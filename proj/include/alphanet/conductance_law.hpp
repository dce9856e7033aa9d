#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace alphanet {

/// One power term D * |v|^alpha of an element characteristic.
struct PowerTerm {
    double coefficient = 1.0;  ///< D, conductance-like, > 0
    double exponent = 1.0;     ///< alpha, >= 1

    friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

/// Characteristic i = f(v) shared by every conductor of a realization.
///
/// f(v) = sum_p D_p * sign(v) * |v|^alpha_p. The odd extension keeps f strictly
/// increasing on the whole real line, so the network operating point is unique
/// for either polarity of a branch voltage. A one-term law describes an
/// alpha-circuit; several terms describe a polynomial (f-) circuit.
///
/// Terms are kept sorted by strictly increasing exponent. Constructing from
/// terms with repeated exponents merges them by adding coefficients.
class ConductanceLaw {
public:
    /// Unit linear conductor, i = v.
    ConductanceLaw() : terms_{PowerTerm{1.0, 1.0}} {}

    /// Throws DomainError on an empty term list, D <= 0, non-finite values or alpha < 1.
    explicit ConductanceLaw(std::vector<PowerTerm> terms);

    /// Single-term law D * v^alpha.
    static ConductanceLaw power(double coefficient, double exponent);

    /// Parses "D:alpha[,D:alpha...]" (e.g. "1:1,1:3").
    static ConductanceLaw parse(std::string_view text);

    const std::vector<PowerTerm>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_single_term() const noexcept { return terms_.size() == 1; }

    /// Branch current for a signed branch voltage.
    double current(double v) const;
    /// df/dv, always >= 0.
    double conductance(double v) const;
    /// Dissipated power v * f(v) = sum_p D_p |v|^(alpha_p + 1).
    double power_dissipated(double v) const;

    /// Same exponents, every coefficient multiplied by factor (> 0).
    ConductanceLaw scaled(double factor) const;

    /// Exponents pulled toward 1: alpha -> 1 + t (alpha - 1), t in [0, 1].
    /// Used by the solver's continuation fallback.
    ConductanceLaw with_exponent_fraction(double t) const;

    /// True when every term of `component` appears in this law with at most
    /// this law's coefficient (relative slack 1e-12).
    bool contains(const ConductanceLaw& component) const;

    /// Canonical "D:alpha,D:alpha" form, round-trips through parse().
    std::string to_string() const;

    friend bool operator==(const ConductanceLaw&, const ConductanceLaw&) = default;

    /// Term-wise union, equal exponents merge.
    friend ConductanceLaw operator+(const ConductanceLaw& lhs, const ConductanceLaw& rhs);

private:
    std::vector<PowerTerm> terms_;
};

/// Parses participants separated by ';' (e.g. "1:1;1:3").
std::vector<ConductanceLaw> parse_laws(std::string_view text);

}  // namespace alphanet
