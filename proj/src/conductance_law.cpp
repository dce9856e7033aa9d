#include "alphanet/conductance_law.hpp"

#include "alphanet/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace alphanet {

namespace {

std::vector<PowerTerm> normalize(std::vector<PowerTerm> terms) {
    if (terms.empty()) {
        throw DomainError("conductance law needs at least one term");
    }
    for (const auto& t : terms) {
        if (!std::isfinite(t.coefficient) || !std::isfinite(t.exponent)) {
            throw DomainError("conductance law term is not finite");
        }
        if (t.coefficient <= 0.0) {
            throw DomainError("conductance law coefficient must be > 0");
        }
        if (t.exponent < 1.0) {
            throw DomainError("exponents below 1 are not supported");
        }
    }
    std::stable_sort(terms.begin(), terms.end(),
                     [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
    std::vector<PowerTerm> merged;
    merged.reserve(terms.size());
    for (const auto& t : terms) {
        if (!merged.empty() && merged.back().exponent == t.exponent) {
            merged.back().coefficient += t.coefficient;
        } else {
            merged.push_back(t);
        }
    }
    return merged;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view s, std::string_view context) {
    s = trim(s);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ParseError("bad number '" + std::string(s) + "' in law '" + std::string(context) + "'");
    }
    return value;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    // Prefer the shortest representation that round-trips.
    for (int prec = 1; prec <= 17; ++prec) {
        char shorter[32];
        std::snprintf(shorter, sizeof shorter, "%.*g", prec, x);
        if (std::strtod(shorter, nullptr) == x) {
            return shorter;
        }
    }
    return buf;
}

}  // namespace

ConductanceLaw::ConductanceLaw(std::vector<PowerTerm> terms) : terms_(normalize(std::move(terms))) {}

ConductanceLaw ConductanceLaw::power(double coefficient, double exponent) {
    return ConductanceLaw({PowerTerm{coefficient, exponent}});
}

ConductanceLaw ConductanceLaw::parse(std::string_view text) {
    std::vector<PowerTerm> terms;
    std::string_view rest = text;
    while (true) {
        auto comma = rest.find(',');
        auto item = trim(rest.substr(0, comma));
        auto colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError("law term '" + std::string(item) + "' is not of the form D:alpha");
        }
        terms.push_back({parse_number(item.substr(0, colon), text),
                         parse_number(item.substr(colon + 1), text)});
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    try {
        return ConductanceLaw(std::move(terms));
    } catch (const DomainError& e) {
        throw ParseError("law '" + std::string(text) + "': " + e.what());
    }
}

double ConductanceLaw::current(double v) const {
    const double mag = std::abs(v);
    double i = 0.0;
    for (const auto& t : terms_) {
        i += t.coefficient * std::pow(mag, t.exponent);
    }
    return v < 0.0 ? -i : i;
}

double ConductanceLaw::conductance(double v) const {
    const double mag = std::abs(v);
    double g = 0.0;
    for (const auto& t : terms_) {
        g += t.coefficient * t.exponent * std::pow(mag, t.exponent - 1.0);
    }
    return g;
}

double ConductanceLaw::power_dissipated(double v) const {
    const double mag = std::abs(v);
    double p = 0.0;
    for (const auto& t : terms_) {
        p += t.coefficient * std::pow(mag, t.exponent + 1.0);
    }
    return p;
}

ConductanceLaw ConductanceLaw::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw DomainError("law scale factor must be finite and > 0");
    }
    auto terms = terms_;
    for (auto& t : terms) t.coefficient *= factor;
    return ConductanceLaw(std::move(terms));
}

ConductanceLaw ConductanceLaw::with_exponent_fraction(double t) const {
    auto terms = terms_;
    for (auto& term : terms) term.exponent = 1.0 + t * (term.exponent - 1.0);
    return ConductanceLaw(std::move(terms));
}

bool ConductanceLaw::contains(const ConductanceLaw& component) const {
    for (const auto& c : component.terms_) {
        auto it = std::find_if(terms_.begin(), terms_.end(),
                               [&](const PowerTerm& t) { return t.exponent == c.exponent; });
        if (it == terms_.end() || c.coefficient > it->coefficient * (1.0 + 1e-12)) {
            return false;
        }
    }
    return true;
}

std::string ConductanceLaw::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out << ',';
        out << format_number(terms_[i].coefficient) << ':' << format_number(terms_[i].exponent);
    }
    return out.str();
}

ConductanceLaw operator+(const ConductanceLaw& lhs, const ConductanceLaw& rhs) {
    auto terms = lhs.terms_;
    terms.insert(terms.end(), rhs.terms_.begin(), rhs.terms_.end());
    return ConductanceLaw(std::move(terms));
}

std::vector<ConductanceLaw> parse_laws(std::string_view text) {
    std::vector<ConductanceLaw> laws;
    std::string_view rest = text;
    while (true) {
        auto semi = rest.find(';');
        laws.push_back(ConductanceLaw::parse(rest.substr(0, semi)));
        if (semi == std::string_view::npos) break;
        rest.remove_prefix(semi + 1);
    }
    return laws;
}

}  // namespace alphanet
