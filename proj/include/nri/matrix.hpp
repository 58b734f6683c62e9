#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nri {

using cdouble = std::complex<double>;

/// Dense square complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim)
        : dim_(dim), entries_(dim * dim, cdouble{0.0, 0.0}) {
        if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be positive");
    }
    ComplexMatrix(std::size_t dim, std::vector<cdouble> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be positive");
        if (entries_.size() != dim * dim)
            throw std::invalid_argument("ComplexMatrix: entry count does not match dim");
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return dim_; }

    cdouble& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    std::span<const cdouble> data() const { return entries_; }
    std::span<cdouble> data() { return entries_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    bool all_finite() const {
        for (const auto& z : entries_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    bool exactly_hermitian() const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i; j < dim_; ++j)
                if ((*this)(i, j) != std::conj((*this)(j, i))) return false;
        return true;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : entries_) s += std::norm(z);
        return std::sqrt(s);
    }

private:
    std::size_t dim_ = 0;
    std::vector<cdouble> entries_;
};

inline void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b);
    ComplexMatrix r(a.dim());
    for (std::size_t k = 0; k < a.data().size(); ++k) r.data()[k] = a.data()[k] + b.data()[k];
    return r;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b);
    ComplexMatrix r(a.dim());
    for (std::size_t k = 0; k < a.data().size(); ++k) r.data()[k] = a.data()[k] - b.data()[k];
    return r;
}

inline ComplexMatrix operator*(cdouble s, const ComplexMatrix& a) {
    ComplexMatrix r(a.dim());
    for (std::size_t k = 0; k < a.data().size(); ++k) r.data()[k] = s * a.data()[k];
    return r;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& a) { return cdouble{s, 0.0} * a; }

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b);
    const std::size_t n = a.dim();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cdouble aik = a(i, k);
            if (aik == cdouble{}) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

/// Self-adjoint matrix.  entry(i,j) == conj(entry(j,i)) holds exactly: the
/// lower triangle is mirrored from the upper at construction and the
/// diagonal is forced real.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(std::size_t dim) : m_(dim) {}

    static HermitianMatrix identity(std::size_t dim) {
        HermitianMatrix h(dim);
        for (std::size_t i = 0; i < dim; ++i) h.m_(i, i) = 1.0;
        return h;
    }

    static HermitianMatrix diagonal(const std::vector<double>& d) {
        HermitianMatrix h(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) h.m_(i, i) = d[i];
        return h;
    }

    /// Nearest Hermitian matrix (M + M*)/2, with the symmetry enforced exactly.
    static HermitianMatrix closest(const ComplexMatrix& m) {
        if (!m.all_finite()) throw std::invalid_argument("HermitianMatrix: non-finite entries");
        HermitianMatrix h(m.dim());
        const std::size_t n = m.dim();
        for (std::size_t i = 0; i < n; ++i) {
            h.m_(i, i) = m(i, i).real();
            for (std::size_t j = i + 1; j < n; ++j) {
                const cdouble v = 0.5 * (m(i, j) + std::conj(m(j, i)));
                h.m_(i, j) = v;
                h.m_(j, i) = std::conj(v);
            }
        }
        return h;
    }

    std::size_t dim() const { return m_.dim(); }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const ComplexMatrix& matrix() const { return m_; }

    void set(std::size_t i, std::size_t j, cdouble v) {
        if (i == j) {
            m_(i, i) = v.real();
        } else {
            m_(i, j) = v;
            m_(j, i) = std::conj(v);
        }
    }

private:
    ComplexMatrix m_;
};

inline HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix::closest(a.matrix() + b.matrix());
}

inline HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix::closest(a.matrix() - b.matrix());
}

inline HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix::closest(s * a.matrix());
}

/// Cartesian decomposition A = B + iC with B, C self-adjoint.
struct CartesianParts {
    HermitianMatrix real_part;  // B = (A + A*)/2
    HermitianMatrix imag_part;  // C = (A - A*)/(2i)
};

inline CartesianParts cartesian_decompose(const ComplexMatrix& a) {
    if (!a.all_finite()) throw std::invalid_argument("cartesian_decompose: non-finite entries");
    const ComplexMatrix astar = a.adjoint();
    CartesianParts p;
    p.real_part = HermitianMatrix::closest(0.5 * (a + astar));
    p.imag_part = HermitianMatrix::closest(cdouble{0.0, -0.5} * (a - astar));
    return p;
}

// Matrix file round trip (JSON {"dim", "re", "im"}); bit-exact for finite doubles.
std::string matrix_to_json_string(const ComplexMatrix& m);
ComplexMatrix matrix_from_json_string(const std::string& text);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);
ComplexMatrix read_matrix_file(const std::string& path);

}  // namespace nri
