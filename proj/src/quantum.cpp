#include "nlb/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nlb::quantum {

CMat CMat::identity(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

CMat CMat::adjoint() const {
    CMat m(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m.at(c, r) = std::conj(at(r, c));
    return m;
}

cplx CMat::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < n; ++i) t += at(i, i);
    return t;
}

double CMat::max_abs() const {
    double m = 0.0;
    for (const cplx& v : a) m = std::max(m, std::abs(v));
    return m;
}

CMat operator+(const CMat& x, const CMat& y) {
    CMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

CMat operator-(const CMat& x, const CMat& y) {
    CMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

CMat operator*(const CMat& x, const CMat& y) {
    CMat r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            cplx f = x.at(i, k);
            if (f == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < x.n; ++j) r.at(i, j) += f * y.at(k, j);
        }
    return r;
}

CMat operator*(cplx s, const CMat& x) {
    CMat r = x;
    for (auto& v : r.a) v *= s;
    return r;
}

CMat kron(const CMat& x, const CMat& y) {
    CMat r(x.n * y.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            cplx f = x.at(i, j);
            if (f == cplx(0.0, 0.0)) continue;
            for (int k = 0; k < y.n; ++k)
                for (int l = 0; l < y.n; ++l) r.at(i * y.n + k, j * y.n + l) = f * y.at(k, l);
        }
    return r;
}

CMat outer(const std::vector<cplx>& psi) {
    CMat r(static_cast<int>(psi.size()));
    for (size_t i = 0; i < psi.size(); ++i)
        for (size_t j = 0; j < psi.size(); ++j) r.at(static_cast<int>(i), static_cast<int>(j)) = psi[i] * std::conj(psi[j]);
    return r;
}

double hermiticity_error(const CMat& m) {
    double worst = 0.0;
    for (int r = 0; r < m.n; ++r)
        for (int c = 0; c < m.n; ++c)
            worst = std::max(worst, std::abs(m.at(r, c) - std::conj(m.at(c, r))));
    return worst;
}

EigResult eigh(const CMat& hermitian) {
    const int n = hermitian.n;
    CMat a = hermitian;
    CMat v = CMat::identity(n);
    const double scale = std::max(1.0, a.max_abs());
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a.at(p, q)));
        if (off <= 1e-14 * scale) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double r = std::abs(a.at(p, q));
                if (r <= 1e-15 * scale) continue;
                // phase of the off-diagonal entry, then a real Jacobi rotation
                cplx phase = a.at(p, q) / r;
                double app = a.at(p, p).real(), aqq = a.at(q, q).real();
                double tau = (app - aqq) / (2.0 * r);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::hypot(1.0, tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                cplx jpq = -s * phase;          // J[p][q]
                cplx jqp = s * std::conj(phase);  // J[q][p]
                // columns: A <- A J, V <- V J
                for (int k = 0; k < n; ++k) {
                    cplx akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = akp * c + akq * jqp;
                    a.at(k, q) = akp * jpq + akq * c;
                    cplx vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = vkp * c + vkq * jqp;
                    v.at(k, q) = vkp * jpq + vkq * c;
                }
                // rows: A <- J^dag A
                for (int k = 0; k < n; ++k) {
                    cplx apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk + std::conj(jqp) * aqk;
                    a.at(q, k) = std::conj(jpq) * apk + c * aqk;
                }
            }
        }
    }
    EigResult out;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = a.at(i, i).real();
    // sort ascending, permuting eigenvector columns alongside
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return out.values[x] < out.values[y]; });
    EigResult sorted;
    sorted.values.resize(n);
    sorted.vectors = CMat(n);
    for (int i = 0; i < n; ++i) {
        sorted.values[i] = out.values[order[i]];
        for (int k = 0; k < n; ++k) sorted.vectors.at(k, i) = v.at(k, order[i]);
    }
    return sorted;
}

double min_eigenvalue(const CMat& hermitian) { return eigh(hermitian).values.front(); }

CMat partial_trace(const CMat& rho, const std::vector<int>& dims, const std::vector<int>& keep) {
    int total = 1;
    for (int d : dims) total *= d;
    if (total != rho.n) throw std::invalid_argument("partial_trace: dimension mismatch");
    int kd = 1;
    for (int p : keep) kd *= dims[p];
    CMat out(kd);
    const int np = static_cast<int>(dims.size());
    std::vector<int> it(np, 0), jt(np, 0);
    for (int i = 0; i < rho.n; ++i) {
        {
            int rem = i;
            for (int p = np; p-- > 0;) {
                it[p] = rem % dims[p];
                rem /= dims[p];
            }
        }
        for (int j = 0; j < rho.n; ++j) {
            int rem = j;
            for (int p = np; p-- > 0;) {
                jt[p] = rem % dims[p];
                rem /= dims[p];
            }
            bool diag_elsewhere = true;
            for (int p = 0; p < np && diag_elsewhere; ++p) {
                bool kept = false;
                for (int k : keep) kept |= (k == p);
                if (!kept && it[p] != jt[p]) diag_elsewhere = false;
            }
            if (!diag_elsewhere) continue;
            int r = 0, c = 0;
            for (int k : keep) {
                r = r * dims[k] + it[k];
                c = c * dims[k] + jt[k];
            }
            out.at(r, c) += rho.at(i, j);
        }
    }
    return out;
}

uint64_t Rng::next_u64() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double ang = 2.0 * M_PI * u2;
    spare_ = r * std::sin(ang);
    have_spare_ = true;
    return r * std::cos(ang);
}

void validate_model(const QuantumModel& model) {
    const Scenario& sc = model.scenario;
    if (static_cast<int>(model.dims.size()) != sc.parties())
        throw std::invalid_argument("quantum model: one local dimension per party required");
    int total = 1;
    for (int d : model.dims) {
        if (d < 2) throw std::invalid_argument("quantum model: local dimension must be >= 2");
        total *= d;
    }
    if (model.rho.n != total)
        throw std::invalid_argument("quantum model: state dimension mismatch");
    if (hermiticity_error(model.rho) > 1e-10)
        throw std::invalid_argument("quantum model: state is not Hermitian");
    if (std::fabs(model.rho.trace().real() - 1.0) > 1e-12 ||
        std::fabs(model.rho.trace().imag()) > 1e-12)
        throw std::invalid_argument("quantum model: state trace is not 1");
    if (min_eigenvalue(model.rho) < -1e-10)
        throw std::invalid_argument("quantum model: state is not positive semidefinite");

    if (static_cast<int>(model.measurements.size()) != sc.parties())
        throw std::invalid_argument("quantum model: one measurement family per party required");
    for (int n = 0; n < sc.parties(); ++n) {
        if (static_cast<int>(model.measurements[n].size()) != sc.settings(n))
            throw std::invalid_argument("quantum model: wrong setting count for party " +
                                        std::to_string(n + 1));
        for (int s = 0; s < sc.settings(n); ++s) {
            const auto& povm = model.measurements[n][s];
            if (static_cast<int>(povm.size()) != sc.outcomes(n))
                throw std::invalid_argument("quantum model: wrong outcome count in a POVM");
            CMat sum(model.dims[n]);
            for (const CMat& m : povm) {
                if (m.n != model.dims[n])
                    throw std::invalid_argument("quantum model: POVM element dimension mismatch");
                if (hermiticity_error(m) > 1e-10)
                    throw std::invalid_argument("quantum model: POVM element not Hermitian");
                if (min_eigenvalue(m) < -1e-10)
                    throw std::invalid_argument("quantum model: POVM element not PSD");
                sum = sum + m;
            }
            if ((sum - CMat::identity(model.dims[n])).max_abs() > 1e-10)
                throw std::invalid_argument("quantum model: POVM does not sum to identity");
            if (model.projective) {
                for (size_t i = 0; i < povm.size(); ++i) {
                    if ((povm[i] * povm[i] - povm[i]).max_abs() > 1e-10)
                        throw std::invalid_argument("quantum model: element is not a projector");
                    for (size_t j = i + 1; j < povm.size(); ++j)
                        if ((povm[i] * povm[j]).max_abs() > 1e-10)
                            throw std::invalid_argument(
                                "quantum model: projectors are not orthogonal");
                }
            }
        }
    }
}

Behavior<double> born_behavior(const QuantumModel& model) {
    validate_model(model);
    const Scenario& sc = model.scenario;
    const int np = sc.parties();
    const int D = model.rho.n;

    std::vector<std::vector<double>> tables(sc.joint_settings_count());
    std::vector<int> stuple(np, 0);
    std::vector<int> rt(np), ct(np);
    for (int64_t s = 0; s < sc.joint_settings_count(); ++s) {
        tables[s].assign(sc.joint_outcomes_count(), 0.0);
        std::vector<int> otuple(np, 0);
        for (int64_t o = 0; o < sc.joint_outcomes_count(); ++o) {
            // tr[rho (M1 x ... x MN)] by direct index contraction
            cplx acc = 0.0;
            for (int i = 0; i < D; ++i) {
                int rem = i;
                for (int p = np; p-- > 0;) {
                    rt[p] = rem % model.dims[p];
                    rem /= model.dims[p];
                }
                for (int j = 0; j < D; ++j) {
                    cplx rij = model.rho.at(i, j);
                    if (rij == cplx(0.0, 0.0)) continue;
                    int remj = j;
                    for (int p = np; p-- > 0;) {
                        ct[p] = remj % model.dims[p];
                        remj /= model.dims[p];
                    }
                    cplx prod = rij;
                    for (int p = 0; p < np; ++p)
                        prod *= model.measurements[p][stuple[p]][otuple[p]].at(ct[p], rt[p]);
                    acc += prod;
                }
            }
            tables[s][o] = acc.real();
            MixedRadix::next(otuple, sc.outcomes_list());
        }
        MixedRadix::next(stuple, sc.settings_list());
    }
    return validate_behavior(sc, std::move(tables), 1e-9);
}

CMat singlet() {
    std::vector<cplx> psi(4, 0.0);
    psi[1] = 1.0 / std::sqrt(2.0);   // |01>
    psi[2] = -1.0 / std::sqrt(2.0);  // |10>
    return outer(psi);
}

CMat ghz(int parties) {
    if (parties < 2) throw std::invalid_argument("ghz: need at least two parties");
    int dim = 1 << parties;
    std::vector<cplx> psi(dim, 0.0);
    psi[0] = 1.0 / std::sqrt(2.0);
    psi[dim - 1] = 1.0 / std::sqrt(2.0);
    return outer(psi);
}

CMat max_entangled(int d) {
    if (d < 2) throw std::invalid_argument("max_entangled: need d >= 2");
    std::vector<cplx> psi(static_cast<size_t>(d) * d, 0.0);
    for (int k = 0; k < d; ++k) psi[static_cast<size_t>(k) * d + k] = 1.0 / std::sqrt(static_cast<double>(d));
    return outer(psi);
}

CMat maximally_mixed(int dim) {
    CMat m = CMat::identity(dim);
    return cplx(1.0 / dim, 0.0) * m;
}

std::vector<CMat> qubit_projector(double theta, double phi) {
    double nx = std::sin(theta) * std::cos(phi);
    double ny = std::sin(theta) * std::sin(phi);
    double nz = std::cos(theta);
    CMat plus(2), minus(2);
    // (I + n.sigma)/2 and (I - n.sigma)/2
    plus.at(0, 0) = 0.5 * (1.0 + nz);
    plus.at(0, 1) = 0.5 * cplx(nx, -ny);
    plus.at(1, 0) = 0.5 * cplx(nx, ny);
    plus.at(1, 1) = 0.5 * (1.0 - nz);
    minus.at(0, 0) = 0.5 * (1.0 - nz);
    minus.at(0, 1) = -0.5 * cplx(nx, -ny);
    minus.at(1, 0) = -0.5 * cplx(nx, ny);
    minus.at(1, 1) = 0.5 * (1.0 + nz);
    return {plus, minus};
}

QuantumModel chsh_optimal_model() {
    QuantumModel model;
    model.scenario = make_scenario(2, {2, 2}, {2, 2});
    model.dims = {2, 2};
    model.rho = singlet();
    model.projective = true;
    const double pi = M_PI;
    model.measurements = {
        {qubit_projector(0.0, 0.0), qubit_projector(pi / 2, 0.0)},
        {qubit_projector(5 * pi / 4, 0.0), qubit_projector(3 * pi / 4, 0.0)},
    };
    return model;
}

namespace {

// Haar unitary: modified Gram-Schmidt on a complex Ginibre matrix.
CMat haar_unitary(int d, Rng& rng) {
    std::vector<std::vector<cplx>> cols(d, std::vector<cplx>(d));
    for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) cols[c][r] = cplx(rng.gaussian(), rng.gaussian());
    for (int c = 0; c < d; ++c) {
        for (int p = 0; p < c; ++p) {
            cplx ip = 0.0;
            for (int r = 0; r < d; ++r) ip += std::conj(cols[p][r]) * cols[c][r];
            for (int r = 0; r < d; ++r) cols[c][r] -= ip * cols[p][r];
        }
        double norm = 0.0;
        for (int r = 0; r < d; ++r) norm += std::norm(cols[c][r]);
        norm = std::sqrt(norm);
        for (int r = 0; r < d; ++r) cols[c][r] /= norm;
    }
    CMat u(d);
    for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) u.at(r, c) = cols[c][r];
    return u;
}

std::vector<CMat> projective_from_unitary(const CMat& u) {
    std::vector<CMat> povm;
    for (int c = 0; c < u.n; ++c) {
        std::vector<cplx> col(u.n);
        for (int r = 0; r < u.n; ++r) col[r] = u.at(r, c);
        povm.push_back(outer(col));
    }
    return povm;
}

std::vector<CMat> random_povm(int d, Rng& rng) {
    std::vector<CMat> gs;
    CMat total(d);
    for (int k = 0; k < d; ++k) {
        CMat x(d);
        for (auto& v : x.a) v = cplx(rng.gaussian(), rng.gaussian());
        CMat g = x * x.adjoint();
        gs.push_back(g);
        total = total + g;
    }
    // conjugate by total^(-1/2) so the family sums to the identity
    EigResult eig = eigh(total);
    CMat isq(d);
    for (int i = 0; i < d; ++i) {
        double w = eig.values[i];
        cplx li = 1.0 / std::sqrt(w);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                isq.at(r, c) += li * eig.vectors.at(r, i) * std::conj(eig.vectors.at(c, i));
    }
    for (auto& g : gs) g = isq * g * isq;
    return gs;
}

}  // namespace

QuantumModel random_model(const Scenario& sc, uint64_t seed, bool projective) {
    QuantumModel model;
    model.scenario = sc;
    model.dims = sc.outcomes_list();
    model.projective = projective;
    Rng rng(seed);
    int total = 1;
    for (int d : model.dims) total *= d;
    std::vector<cplx> psi(total);
    double norm = 0.0;
    for (auto& v : psi) {
        v = cplx(rng.gaussian(), rng.gaussian());
        norm += std::norm(v);
    }
    norm = std::sqrt(norm);
    for (auto& v : psi) v /= norm;
    model.rho = outer(psi);
    model.measurements.resize(sc.parties());
    for (int n = 0; n < sc.parties(); ++n) {
        model.measurements[n].resize(sc.settings(n));
        for (int s = 0; s < sc.settings(n); ++s) {
            if (projective)
                model.measurements[n][s] = projective_from_unitary(haar_unitary(model.dims[n], rng));
            else
                model.measurements[n][s] = random_povm(model.dims[n], rng);
        }
    }
    return model;
}

double bound_general(int d, int S, int N) {
    if (d < 2 || S < 1 || N < 2) throw std::invalid_argument("bound_general: need d>=2, S>=1, N>=2");
    return std::pow(2.0 * std::min(d, S) - 1.0, N - 1);
}

double bound_projective(int d, int S, int N) {
    if (d < 2 || S < 1 || N < 2)
        throw std::invalid_argument("bound_projective: need d>=2, S>=1, N>=2");
    if (S == 1) return 1.0;
    if (S == 2)
        return std::min(std::pow(static_cast<double>(d), (N - 1) / 2.0),
                        std::pow(3.0, N - 1));
    return std::min(std::pow(static_cast<double>(d), S * (N - 1) / 2.0),
                    std::pow(2.0 * std::min(d, S) - 1.0, N - 1));
}

}  // namespace nlb::quantum
