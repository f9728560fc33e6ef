#ifndef TORIC_TESTS_PRINTING_HPP
#define TORIC_TESTS_PRINTING_HPP

#include <catch_amalgamated.hpp>

#include <toric/toric.hpp>

namespace Catch
{
template <>
struct StringMaker<toric::MultiSeries> {
    static std::string convert(const toric::MultiSeries &s)
    {
        return toric::to_string(s) + " [k=" + std::to_string(s.k()) + ", order " + std::to_string(s.order()) + "]";
    }
};
template <>
struct StringMaker<toric::Poly> {
    static std::string convert(const toric::Poly &p)
    {
        return toric::to_string(p);
    }
};
template <>
struct StringMaker<toric::Rational> {
    static std::string convert(const toric::Rational &q)
    {
        return toric::to_string(q);
    }
};
} // namespace Catch

#endif
