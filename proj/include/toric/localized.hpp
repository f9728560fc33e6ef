#ifndef TORIC_LOCALIZED_HPP
#define TORIC_LOCALIZED_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <toric/series.hpp>

namespace toric
{

// numerator / prod(denominators)
struct LocalizedTerm {
    MultiSeries numerator;
    std::vector<LinearForm> denominators;
};

// A finite sum of localized terms whose total is expected to be a power
// series known to `order`. Each numerator must be known to at least
// order + (number of its denominators).
class LocalizedSum
{
public:
    LocalizedSum(RingPtr ring, int k, int order) : m_ring(std::move(ring)), m_k(k), m_order(order)
    {
        if (order < 0) {
            throw std::invalid_argument("truncation order must be nonnegative");
        }
    }

    void add(MultiSeries numerator, std::vector<LinearForm> denominators)
    {
        if (!same_ring(numerator.ring(), m_ring) || numerator.k() != m_k) {
            throw std::invalid_argument("localized term is incompatible with the sum");
        }
        for (const auto &w : denominators) {
            if (w.k() != m_k) {
                throw std::invalid_argument("denominator length does not match the variable count");
            }
        }
        const int need = m_order + static_cast<int>(denominators.size());
        if (numerator.order() < need) {
            throw std::invalid_argument("localized term numerator known to order "
                                        + std::to_string(numerator.order()) + ", need "
                                        + std::to_string(need));
        }
        m_terms.push_back({numerator.truncated(need), std::move(denominators)});
    }

    const RingPtr &ring() const
    {
        return m_ring;
    }
    int k() const
    {
        return m_k;
    }
    int order() const
    {
        return m_order;
    }
    const std::vector<LocalizedTerm> &terms() const
    {
        return m_terms;
    }

private:
    RingPtr m_ring;
    int m_k;
    int m_order;
    std::vector<LocalizedTerm> m_terms;
};

// The sum rewritten as N / prod(forms) with primitive forms.
// N is known to order + forms.size().
struct CommonDenominator {
    MultiSeries numerator;
    std::vector<LinearForm> forms;
};

inline CommonDenominator common_denominator(const LocalizedSum &ls)
{
    // Per term: scale and multiplicity of each primitive form.
    struct Split {
        Integer scale = 1;
        std::map<LinearForm, int> mult;
    };
    std::vector<Split> splits;
    std::map<LinearForm, int> total;
    for (const auto &t : ls.terms()) {
        Split s;
        for (const auto &w : t.denominators) {
            auto [g, p] = w.primitive();
            s.scale *= g;
            ++s.mult[p];
        }
        for (const auto &[p, e] : s.mult) {
            total[p] = std::max(total[p], e);
        }
        splits.push_back(std::move(s));
    }
    std::vector<LinearForm> forms;
    for (const auto &[p, e] : total) {
        forms.insert(forms.end(), static_cast<std::size_t>(e), p);
    }
    const int d = static_cast<int>(forms.size());
    MultiSeries n(ls.ring(), ls.k(), ls.order() + d);
    for (std::size_t i = 0; i < ls.terms().size(); ++i) {
        const auto &t = ls.terms()[i];
        MultiSeries acc = t.numerator * (Rational(1) / Rational(splits[i].scale));
        for (const auto &[p, e] : total) {
            auto it = splits[i].mult.find(p);
            const int own = it == splits[i].mult.end() ? 0 : it->second;
            for (int j = own; j < e; ++j) {
                acc = mul_linear(acc, p);
            }
        }
        n += acc;
    }
    return {n, forms};
}

// Divides one homogeneous layer by a product of linear forms.
inline std::optional<Layer> divide_layer_by_forms(Layer p, const std::vector<LinearForm> &forms)
{
    for (const auto &w : forms) {
        auto q = divide_layer(p, w);
        if (!q) {
            return std::nullopt;
        }
        p = std::move(*q);
    }
    return p;
}

// Cancels the common denominator and returns the power series the sum
// represents. Throws not_divisible carrying the lowest degree of the sum at
// which the terms fail to cancel to a polynomial (negative for principal part).
inline MultiSeries normalize(const LocalizedSum &ls)
{
    const auto cd = common_denominator(ls);
    const int d = static_cast<int>(cd.forms.size());
    MultiSeries out(ls.ring(), ls.k(), ls.order());
    for (int e = 0; e <= ls.order() + d; ++e) {
        const auto &layer = cd.numerator.layer(e);
        if (layer.empty()) {
            continue;
        }
        if (e < d) {
            throw not_divisible("localized sum has a nonzero principal part in degree " + std::to_string(e - d),
                                e - d);
        }
        auto q = divide_layer_by_forms(layer, cd.forms);
        if (!q) {
            throw not_divisible("localized sum does not cancel to a polynomial in degree " + std::to_string(e - d),
                                e - d);
        }
        out.layer(e - d) = std::move(*q);
    }
    return out;
}

} // namespace toric

#endif
