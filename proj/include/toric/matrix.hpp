#ifndef TORIC_MATRIX_HPP
#define TORIC_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include <toric/rational.hpp>

namespace toric
{

// Dense row-major matrix over Integer or Rational.
template <typename T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : m_rows(rows), m_cols(cols), m_data(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        m_rows = rows.size();
        m_cols = m_rows ? rows.begin()->size() : 0;
        for (const auto &r : rows) {
            if (r.size() != m_cols) {
                throw std::invalid_argument("ragged matrix literal");
            }
            for (long v : r) {
                m_data.emplace_back(v);
            }
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    std::size_t rows() const
    {
        return m_rows;
    }
    std::size_t cols() const
    {
        return m_cols;
    }
    T &operator()(std::size_t r, std::size_t c)
    {
        return m_data[r * m_cols + c];
    }
    const T &operator()(std::size_t r, std::size_t c) const
    {
        return m_data[r * m_cols + c];
    }

    std::vector<T> column(std::size_t c) const
    {
        std::vector<T> v(m_rows);
        for (std::size_t r = 0; r < m_rows; ++r) {
            v[r] = (*this)(r, c);
        }
        return v;
    }
    // Submatrix on the given (0-based) columns, in the given order.
    Matrix columns(const std::vector<std::size_t> &idx) const
    {
        Matrix s(m_rows, idx.size());
        for (std::size_t r = 0; r < m_rows; ++r) {
            for (std::size_t j = 0; j < idx.size(); ++j) {
                s(r, j) = (*this)(r, idx[j]);
            }
        }
        return s;
    }
    Matrix transpose() const
    {
        Matrix t(m_cols, m_rows);
        for (std::size_t r = 0; r < m_rows; ++r) {
            for (std::size_t c = 0; c < m_cols; ++c) {
                t(c, r) = (*this)(r, c);
            }
        }
        return t;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b)
    {
        if (a.m_cols != b.m_rows) {
            throw std::invalid_argument("matrix dimensions do not agree");
        }
        Matrix p(a.m_rows, b.m_cols);
        for (std::size_t i = 0; i < a.m_rows; ++i) {
            for (std::size_t k = 0; k < a.m_cols; ++k) {
                for (std::size_t j = 0; j < b.m_cols; ++j) {
                    p(i, j) += a(i, k) * b(k, j);
                }
            }
        }
        return p;
    }

    bool operator==(const Matrix &o) const
    {
        return m_rows == o.m_rows && m_cols == o.m_cols && m_data == o.m_data;
    }

private:
    std::size_t m_rows = 0, m_cols = 0;
    std::vector<T> m_data;
};

template <typename T>
Matrix<Rational> to_rational(const Matrix<T> &m)
{
    Matrix<Rational> q(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            q(r, c) = Rational(m(r, c));
        }
    }
    return q;
}

// Gaussian elimination over Q.
template <typename T>
Rational determinant(const Matrix<T> &m)
{
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("determinant of a non-square matrix");
    }
    Matrix<Rational> a = to_rational(m);
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) {
            ++p;
        }
        if (p == n) {
            return 0;
        }
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
            }
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c) == 0) {
                continue;
            }
            const Rational f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) {
                a(r, j) -= f * a(c, j);
            }
        }
    }
    return det;
}

template <typename T>
Matrix<Rational> inverse(const Matrix<T> &m)
{
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("inverse of a non-square matrix");
    }
    const std::size_t n = m.rows();
    Matrix<Rational> a = to_rational(m);
    Matrix<Rational> inv = Matrix<Rational>::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) {
            ++p;
        }
        if (p == n) {
            throw std::domain_error("matrix is singular");
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(p, j), a(c, j));
            std::swap(inv(p, j), inv(c, j));
        }
        const Rational s = 1 / a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) *= s;
            inv(c, j) *= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) {
                continue;
            }
            const Rational f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

// Inverse of a unimodular integer matrix; throws if the inverse is not integral.
inline Matrix<Integer> integer_inverse(const Matrix<Integer> &m)
{
    const Matrix<Rational> q = inverse(m);
    Matrix<Integer> r(q.rows(), q.cols());
    for (std::size_t i = 0; i < q.rows(); ++i) {
        for (std::size_t j = 0; j < q.cols(); ++j) {
            if (!is_integer(q(i, j))) {
                throw std::domain_error("matrix inverse is not integral");
            }
            r(i, j) = q(i, j).get_num();
        }
    }
    return r;
}

} // namespace toric

#endif
