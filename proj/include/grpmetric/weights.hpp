#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "groups.hpp"
#include "metrics.hpp"

namespace grpmetric {

/// w(x) = d(x, x0).
struct WeightFunction {
    Element base = 0;
    std::vector<Distance> values;

    std::size_t size() const { return values.size(); }
    Distance operator()(Element x) const { return values.at(x); }
};

/// Ascending coefficients A_0..A_N of sum_x t^w(x).
class EnumeratorPolynomial {
public:
    EnumeratorPolynomial() = default;
    explicit EnumeratorPolynomial(std::vector<std::uint64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto v : c_) s += v;
        return s;
    }
    bool operator==(const EnumeratorPolynomial& o) const { return c_ == o.c_; }

    EnumeratorPolynomial& add(std::size_t degree, std::uint64_t count) {
        if (c_.size() <= degree) c_.resize(degree + 1, 0);
        c_[degree] += count;
        return *this;
    }
    EnumeratorPolynomial operator+(const EnumeratorPolynomial& o) const {
        EnumeratorPolynomial r = *this;
        for (std::size_t i = 0; i < o.c_.size(); ++i) r.add(i, o.c_[i]);
        return r;
    }
    /// Coefficientwise subtraction; throws if any coefficient would go negative.
    EnumeratorPolynomial operator-(const EnumeratorPolynomial& o) const {
        EnumeratorPolynomial r = *this;
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            if (r[i] < o.c_[i]) throw std::domain_error("enumerator subtraction underflows");
            r.c_[i] -= o.c_[i];
        }
        r.trim();
        return r;
    }

    /// Descending degree, e.g. "4t^3 + 2t^2 + t + 1".
    std::string to_string() const {
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!out.empty()) out += " + ";
            if (i == 0 || c_[i] != 1) out += std::to_string(c_[i]);
            if (i >= 1) out += "t";
            if (i >= 2) out += "^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }

    std::string to_json() const {
        return "{\"coeffs\": [" + join_numbers(c_, ", ") + "], \"carrier\": " + std::to_string(total()) + "}";
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<std::uint64_t> c_;
};

inline WeightFunction weight_function(const MetricTable& d, Element x0) {
    if (x0 >= d.size()) throw std::out_of_range("base point " + std::to_string(x0) + " outside the carrier");
    const auto row = d.row(x0);
    return {x0, std::vector<Distance>(row.begin(), row.end())};
}

inline WeightFunction weight_function(const MetricTable& d) { return weight_function(d, d.zero()); }

inline EnumeratorPolynomial enumerator_of(const WeightFunction& w) {
    EnumeratorPolynomial p;
    for (Distance v : w.values) p.add(v, 1);
    return p;
}

inline EnumeratorPolynomial weight_enumerator(const MetricTable& d, Element x0) {
    return enumerator_of(weight_function(d, x0));
}

inline EnumeratorPolynomial weight_enumerator(const MetricTable& d) { return weight_enumerator(d, d.zero()); }

/// sum_i (|H_i| - |H_(i-1)|) t^i with |H_(-1)| = 0.
inline EnumeratorPolynomial chain_enumerator_closed_form(const SubgroupChain& chain) {
    EnumeratorPolynomial p;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < chain.terms().size(); ++i) {
        p.add(i, chain[i].order() - prev);
        prev = chain[i].order();
    }
    return p;
}

/// (q-1) sum_{i=1..n} q^(i-1) t^i + 1.
inline EnumeratorPolynomial geometric_enumerator(std::uint64_t q, unsigned n) {
    EnumeratorPolynomial p;
    p.add(0, 1);
    for (unsigned i = 1; i <= n; ++i) p.add(i, (q - 1) * checked_pow(q, i - 1));
    return p;
}

struct ProductEnumeratorCheck {
    EnumeratorPolynomial product;   // enumerator of d1 x d2 at (0,0)
    EnumeratorPolynomial predicted; // W1 + W2 - 1 + sum over nonzero pairs
    bool holds = false;
};

/// Compares the direct product enumerator with the decomposition over
/// {0} x {0}, X1* x {0}, {0} x X2* and X1* x X2*, counting the zero element once.
inline ProductEnumeratorCheck product_enumerator_check(const MetricTable& d1, const MetricTable& d2) {
    ProductEnumeratorCheck r;
    const MetricTable prod = product_metric({d1, d2});
    const Element z1 = d1.zero(), z2 = d2.zero();
    r.product = weight_enumerator(prod, static_cast<Element>(z1 * d2.size() + z2));
    const WeightFunction w1 = weight_function(d1, z1), w2 = weight_function(d2, z2);
    EnumeratorPolynomial cross;
    for (Element a = 0; a < d1.size(); ++a) {
        if (a == z1) continue;
        for (Element b = 0; b < d2.size(); ++b)
            if (b != z2) cross.add(w1(a) + w2(b), 1);
    }
    r.predicted = enumerator_of(w1) + enumerator_of(w2) - EnumeratorPolynomial({1}) + cross;
    r.holds = r.product == r.predicted;
    return r;
}

}  // namespace grpmetric
