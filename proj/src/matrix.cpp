#include "matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eqol {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    ComplexMatrix r(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            cplx v = at(i, k);
            if (v == cplx{}) continue;
            for (std::size_t j = 0; j < o.cols; ++j)
                r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
    ComplexMatrix r(rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    ComplexMatrix r(rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
}

ComplexMatrix ComplexMatrix::scaled(cplx s) const {
    ComplexMatrix r(rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * s;
    return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            r.at(j, i) = std::conj(at(i, j));
    return r;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows && i < cols; ++i) t += at(i, i);
    return t;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - o.a[i]));
    return m;
}

double ComplexMatrix::frobenius() const {
    double s = 0.0;
    for (const cplx& v : a) s += std::norm(v);
    return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (rows != cols) return false;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = i; j < cols; ++j)
            if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
    return true;
}

ComplexMatrix tensor_product(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix r(x.rows * y.rows, x.cols * y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) {
            cplx v = x.at(i, j);
            if (v == cplx{}) continue;
            for (std::size_t k = 0; k < y.rows; ++k)
                for (std::size_t l = 0; l < y.cols; ++l)
                    r.at(i * y.rows + k, j * y.cols + l) = v * y.at(k, l);
        }
    return r;
}

ComplexMatrix permute_qubit_factors(const ComplexMatrix& m, const std::vector<std::size_t>& perm) {
    std::size_t n = perm.size();
    std::size_t dim = std::size_t{1} << n;
    if (m.rows != dim || m.cols != dim)
        throw model_error("permute_qubit_factors: dimension does not match qubit count");
    // g maps an input index to the output index: output bit i = input bit perm[i].
    std::vector<std::size_t> g(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t y = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t bit = (x >> (n - 1 - perm[i])) & 1u;
            y |= bit << (n - 1 - i);
        }
        g[x] = y;
    }
    ComplexMatrix r(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            r.at(g[i], g[j]) = m.at(i, j);
    return r;
}

EighResult eigh(const ComplexMatrix& m) {
    std::size_t n = m.rows;
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a.at(i, j));
        return std::sqrt(s);
    };

    double target = 1e-12 * std::max(1.0, off_norm());
    for (int sweep = 0; sweep < 60; ++sweep) {
        if (off_norm() <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                cplx apq = a.at(p, q);
                double mag = std::abs(apq);
                if (mag <= 1e-300) continue;

                // Fold the phase of a_pq into column q so the remaining
                // rotation is real, then apply a classical Jacobi rotation.
                cplx phase = apq / mag;           // e^{i phi}
                cplx dq = std::conj(phase);       // scales column q
                double app = a.at(p, p).real();
                double aqq = a.at(q, q).real();
                double tau = (aqq - app) / (2.0 * mag);
                double t;
                if (tau == 0.0) t = 1.0;
                else {
                    double sgn = tau > 0 ? 1.0 : -1.0;
                    t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                }
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;

                // Column update A <- A U with U = D J, then row update U^* A.
                for (std::size_t i = 0; i < n; ++i) {
                    cplx aip = a.at(i, p);
                    cplx aiq = a.at(i, q) * dq;
                    a.at(i, p) = c * aip - s * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    cplx apj = a.at(p, j);
                    cplx aqj = std::conj(dq) * a.at(q, j);
                    a.at(p, j) = c * apj - s * aqj;
                    a.at(q, j) = s * apj + c * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    cplx vip = v.at(i, p);
                    cplx viq = v.at(i, q) * dq;
                    v.at(i, p) = c * vip - s * viq;
                    v.at(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a.at(i, i).real() < a.at(j, j).real();
    });

    EighResult r;
    r.values.resize(n);
    r.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        r.values[k] = a.at(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i)
            r.vectors.at(i, k) = v.at(i, order[k]);
    }
    return r;
}

bool is_psd(const ComplexMatrix& m, double tol) {
    if (!m.is_hermitian(std::max(tol, 1e-10))) return false;
    EighResult e = eigh(m);
    return e.values.empty() || e.values.front() >= -tol;
}

NegativeWitness most_negative_direction(const ComplexMatrix& m, double tol) {
    NegativeWitness w;
    EighResult e = eigh(m);
    if (e.values.empty() || e.values.front() >= -tol) return w;
    w.found = true;
    w.eigenvalue = e.values.front();
    w.vector.resize(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) w.vector[i] = e.vectors.at(i, 0);
    return w;
}

ComplexMatrix Subspace::projector() const {
    return basis * basis.adjoint();
}

bool Subspace::contains(const std::vector<cplx>& v, double tol) const {
    // Residual of v after removing its component inside the span.
    std::vector<cplx> coeff(rank());
    for (std::size_t k = 0; k < rank(); ++k) {
        cplx c = 0.0;
        for (std::size_t i = 0; i < dim; ++i) c += std::conj(basis.at(i, k)) * v[i];
        coeff[k] = c;
    }
    double res = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        cplx r = v[i];
        for (std::size_t k = 0; k < rank(); ++k) r -= basis.at(i, k) * coeff[k];
        res += std::norm(r);
    }
    return std::sqrt(res) <= tol;
}

bool Subspace::contains(const Subspace& other, double tol) const {
    for (std::size_t k = 0; k < other.rank(); ++k) {
        std::vector<cplx> col(dim);
        for (std::size_t i = 0; i < dim; ++i) col[i] = other.basis.at(i, k);
        if (!contains(col, tol)) return false;
    }
    return true;
}

bool Subspace::same_as(const Subspace& other, double tol) const {
    return rank() == other.rank() && contains(other, tol) && other.contains(*this, tol);
}

Subspace column_space(const ComplexMatrix& m, double tol) {
    ComplexMatrix gram = m * m.adjoint();
    EighResult e = eigh(gram);
    Subspace s;
    s.dim = m.rows;
    std::size_t keep = 0;
    for (double lam : e.values)
        if (lam > tol) ++keep;
    s.basis = ComplexMatrix(m.rows, keep);
    std::size_t col = 0;
    for (std::size_t k = 0; k < e.values.size(); ++k) {
        if (e.values[k] <= tol) continue;
        for (std::size_t i = 0; i < m.rows; ++i)
            s.basis.at(i, col) = e.vectors.at(i, k);
        ++col;
    }
    return s;
}

} // namespace eqol
