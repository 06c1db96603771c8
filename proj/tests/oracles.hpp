// Copyright 2026 The SBQS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent reference constructions for tests. Nothing here calls the
// library's tensor or channel code: registers are handled with explicit
// index arithmetic so that a bug in the library cannot hide in its oracle.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Mat ket_bra(const Vec &a, const Vec &b) {
    return a * b.adjoint();
}

inline Vec plus() {
    Vec v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return v;
}

inline Vec basis(Eigen::Index dim, Eigen::Index k) {
    Vec v = Vec::Zero(dim);
    v(k) = 1.0;
    return v;
}

// Qubit registers are listed most significant first. `bit(x, q, n)` reads
// qubit q of an n-qubit index.
inline int bit(std::size_t x, int q, int n) {
    return static_cast<int>((x >> (n - 1 - q)) & 1u);
}

// Partial trace over the qubits in `traced` of an n-qubit operator.
inline Mat trace_out(const Mat &m, int n, const std::vector<int> &traced) {
    std::vector<int> kept;
    for (int q = 0; q < n; ++q) {
        bool t = false;
        for (int x : traced) {
            t = t || x == q;
        }
        if (!t) {
            kept.push_back(q);
        }
    }
    const int nk = static_cast<int>(kept.size());
    Mat out = Mat::Zero(Eigen::Index{1} << nk, Eigen::Index{1} << nk);
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            bool same = true;
            for (int x : traced) {
                same = same && bit(r, x, n) == bit(c, x, n);
            }
            if (!same) {
                continue;
            }
            std::size_t rk = 0;
            std::size_t ck = 0;
            for (int q : kept) {
                rk = (rk << 1) | static_cast<std::size_t>(bit(r, q, n));
                ck = (ck << 1) | static_cast<std::size_t>(bit(c, q, n));
            }
            out(static_cast<Eigen::Index>(rk), static_cast<Eigen::Index>(ck)) += m(r, c);
        }
    }
    return out;
}

// Permutation unitary exchanging qubits a[k] <-> b[k] of an n-qubit register.
inline Mat swap_qubits(int n, const std::vector<int> &a, const std::vector<int> &b) {
    const std::size_t dim = std::size_t{1} << n;
    Mat u = Mat::Zero(dim, dim);
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t y = x;
        for (std::size_t k = 0; k < a.size(); ++k) {
            const std::size_t ma = std::size_t{1} << (n - 1 - a[k]);
            const std::size_t mb = std::size_t{1} << (n - 1 - b[k]);
            const bool ba = x & ma;
            const bool bb = x & mb;
            y = (y & ~ma & ~mb) | (bb ? ma : 0) | (ba ? mb : 0);
        }
        u(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = 1.0;
    }
    return u;
}

// |0><0|_control (x) I + |1><1|_control (x) SWAP(a, b), all on an n-qubit register.
inline Mat controlled_swap(int n, int control, const std::vector<int> &a, const std::vector<int> &b) {
    const std::size_t dim = std::size_t{1} << n;
    const Mat s = swap_qubits(n, a, b);
    Mat u = Mat::Zero(dim, dim);
    for (std::size_t x = 0; x < dim; ++x) {
        if (bit(x, control, n) == 0) {
            u(x, x) = 1.0;
        } else {
            u.col(static_cast<Eigen::Index>(x)) = s.col(static_cast<Eigen::Index>(x));
        }
    }
    return u;
}

inline Vec control(double delta) {
    Vec v(2);
    v << 1.0, -delta;
    return v / std::sqrt(1.0 + delta * delta);
}

// One strategy-A sub-step built from the explicit unitary: register
// [control, resource (r qubits), simulator (n qubits)], controlled-SWAP of the
// resource with simulator sites `support`, resource traced out, control
// projected on |+>. Returns the unnormalized simulator operator.
inline Mat explicit_substep(const Mat &sigma, int n, const Mat &rho, const std::vector<int> &support, double delta) {
    const int r = static_cast<int>(support.size());
    const int total = 1 + r + n;
    const Vec c = control(delta);
    const Mat xi = kron(kron(c * c.adjoint(), rho), sigma);
    std::vector<int> res;
    std::vector<int> sim;
    for (int k = 0; k < r; ++k) {
        res.push_back(1 + k);
        sim.push_back(1 + r + support[k]);
    }
    const Mat u = controlled_swap(total, 0, res, sim);
    const Mat out = u * xi * u.adjoint();
    Mat no_res = trace_out(out, total, res);
    // Project control (most significant) onto |+>.
    const Eigen::Index d = Eigen::Index{1} << n;
    return 0.5 * (no_res.block(0, 0, d, d) + no_res.block(0, d, d, d) + no_res.block(d, 0, d, d) +
                  no_res.block(d, d, d, d));
}

// Strategy-B step from the explicit unitaries: register
// [controls (l), resources, simulator]. `global` projects on the (l+1)-term
// W-like vector; otherwise on |+>^l. Returns the unnormalized simulator
// operator.
inline Mat explicit_strategyB(const Mat &sigma, int n, const std::vector<Mat> &rhos,
                              const std::vector<std::vector<int>> &supports, const std::vector<double> &deltas,
                              bool global) {
    const int l = static_cast<int>(rhos.size());
    int nres = 0;
    for (const auto &s : supports) {
        nres += static_cast<int>(s.size());
    }
    const int total = l + nres + n;
    Mat xi = Mat::Identity(1, 1);
    for (int i = 0; i < l; ++i) {
        const Vec c = control(deltas[i]);
        xi = kron(xi, c * c.adjoint());
    }
    for (const auto &r : rhos) {
        xi = kron(xi, r);
    }
    xi = kron(xi, sigma);
    int offset = l;
    std::vector<int> all_res;
    for (int i = 0; i < l; ++i) {
        std::vector<int> res;
        std::vector<int> sim;
        for (std::size_t k = 0; k < supports[i].size(); ++k) {
            res.push_back(offset + static_cast<int>(k));
            sim.push_back(l + nres + supports[i][k]);
        }
        offset += static_cast<int>(supports[i].size());
        all_res.insert(all_res.end(), res.begin(), res.end());
        const Mat u = controlled_swap(total, i, res, sim);
        xi = u * xi * u.adjoint();
    }
    const Mat reduced = trace_out(xi, total, all_res);  // [controls, simulator]
    const Eigen::Index dc = Eigen::Index{1} << l;
    Vec m = Vec::Zero(dc);
    if (global) {
        m(0) = 1.0;
        for (int i = 0; i < l; ++i) {
            m(Eigen::Index{1} << (l - 1 - i)) = 1.0;
        }
        m /= std::sqrt(static_cast<double>(l + 1));
    } else {
        m = Vec::Constant(dc, 1.0 / std::sqrt(static_cast<double>(dc)));
    }
    const Eigen::Index d = Eigen::Index{1} << n;
    Mat out = Mat::Zero(d, d);
    for (Eigen::Index a = 0; a < dc; ++a) {
        for (Eigen::Index b = 0; b < dc; ++b) {
            out += std::conj(m(a)) * m(b) * reduced.block(a * d, b * d, d, d);
        }
    }
    return out;
}

// sum_{k <= terms} m^k / k!
inline Mat exp_series(const Mat &m, int terms = 40) {
    Mat acc = Mat::Identity(m.rows(), m.cols());
    Mat power = acc;
    for (int k = 1; k <= terms; ++k) {
        power = power * m / static_cast<double>(k);
        acc += power;
    }
    return acc;
}

inline double trace_distance(const Mat &a, const Mat &b) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a - b);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline double op_norm(const Mat &m) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

class Random {
   public:
    explicit Random(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    int integer(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }
    cd gaussian() {
        std::normal_distribution<double> g;
        return {g(rng_), g(rng_)};
    }
    Mat ginibre(Eigen::Index d) {
        Mat g(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                g(i, j) = gaussian();
            }
        }
        return g;
    }
    Mat hermitian(Eigen::Index d) {
        const Mat g = ginibre(d);
        return 0.5 * (g + g.adjoint());
    }
    Mat density(Eigen::Index d) {
        const Mat g = ginibre(d);
        Mat rho = g * g.adjoint();
        return rho / rho.trace().real();
    }
    Vec pure(Eigen::Index d) {
        Vec v(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            v(i) = gaussian();
        }
        return v.normalized();
    }
    Mat unitary(Eigen::Index d) {
        Eigen::HouseholderQR<Mat> qr(ginibre(d));
        return qr.householderQ() * Mat::Identity(d, d);
    }
    std::mt19937_64 &engine() {
        return rng_;
    }

   private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
