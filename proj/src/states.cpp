#include "qdist/states.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "qdist/errors.hpp"

namespace qdist {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void fix_global_phase(Vector& amp) {
    for (Eigen::Index i = 0; i < amp.size(); ++i) {
        const double mod = std::abs(amp(i));
        if (mod > 1e-300) {
            amp *= std::conj(amp(i)) / mod;
            amp(i) = mod;
            return;
        }
    }
}

FockVector finish(Vector amp) {
    fix_global_phase(amp);
    return FockVector::normalized(std::move(amp));
}

void check_dim(int dim) {
    if (dim < 1) throw DomainError("dimension must be >= 1");
}

void check_tail(const StateSpec& spec, int dim) {
    const double tail = tail_mass(spec, dim);
    if (tail > kDefaultTailTolerance) {
        throw TruncationError(fmt::format("{}: tail mass {:.3g} beyond dim {} exceeds {:.0e}", spec.family_name(),
                                          tail, dim, kDefaultTailTolerance));
    }
}

/// sum_{k >= start} exp(log_term(k)) for terms that eventually decay monotonically.
template <class LogTerm>
double forward_tail(int start, LogTerm log_term) {
    double sum = 0.0;
    double prev = HUGE_VAL;
    for (int k = start;; ++k) {
        const double t = std::exp(log_term(k));
        sum += t;
        if (k > start + 8 && t <= prev && t < 1e-18 * std::max(sum, 1e-300)) break;
        if (k > start + 8 && t == 0.0) break;
        if (k > start + 200000) break;
        prev = t;
    }
    return sum;
}

double poisson_tail(double lambda, int dim) {
    if (lambda == 0.0) return dim >= 1 ? 0.0 : 1.0;
    const double log_lambda = std::log(lambda);
    return forward_tail(dim, [&](int k) { return -lambda + k * log_lambda - std::lgamma(k + 1.0); });
}

double cat_denominator(complex alpha, double phi) {
    return 1.0 + std::cos(phi) * std::exp(-2.0 * std::norm(alpha));
}

// log of sqrt((2n)!)/(2^n n!), squared in the photon distribution.
double log_squeezed_coeff(int n) {
    return 0.5 * std::lgamma(2.0 * n + 1.0) - n * std::numbers::ln2 - std::lgamma(n + 1.0);
}

double parse_double(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) throw ParseError("not a number: '" + std::string(s) + "'");
    return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

complex parse_complex(const std::vector<std::string>& fields, std::size_t first, std::size_t count) {
    if (count == 1) return {parse_double(fields[first]), 0.0};
    return {parse_double(fields[first]), parse_double(fields[first + 1])};
}

std::vector<double> read_phase_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open phase file '" + path + "'");
    std::vector<double> phases;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        phases.push_back(parse_double(line));
    }
    return phases;
}

}  // namespace

bool StateSpec::is_vacuum() const {
    return std::visit(overloaded{
                          [](const family::Fock& f) { return f.n == 0; },
                          [](const family::Coherent& c) { return c.alpha == complex{}; },
                          [](const family::GeneralizedCoherent& g) { return g.alpha == complex{}; },
                          [](const family::Cat& c) { return c.alpha == complex{} && std::cos(c.phi) > -1.0 + 1e-12; },
                          [](const family::SqueezedVacuum& s) { return s.zeta == complex{}; },
                          [](const family::CoherentPhase& p) { return p.epsilon == complex{}; },
                          [](const family::Thermal& t) { return t.nbar == 0.0; },
                      },
                      params);
}

std::string StateSpec::family_name() const {
    return std::visit(overloaded{
                          [](const family::Fock&) { return "fock"; },
                          [](const family::Coherent&) { return "coherent"; },
                          [](const family::GeneralizedCoherent&) { return "gencoh"; },
                          [](const family::Cat&) { return "cat"; },
                          [](const family::SqueezedVacuum&) { return "squeezed"; },
                          [](const family::CoherentPhase&) { return "phase"; },
                          [](const family::Thermal&) { return "thermal"; },
                      },
                      params);
}

void validate(const StateSpec& spec) {
    std::visit(overloaded{
                   [](const family::Fock& f) {
                       if (f.n < 0) throw DomainError("fock: n must be >= 0");
                   },
                   [](const family::Coherent&) {},
                   [](const family::GeneralizedCoherent&) {},
                   [](const family::Cat& c) {
                       if (!(cat_denominator(c.alpha, c.phi) > 1e-14)) {
                           throw DomainError("cat: degenerate normalization (alpha -> 0 with phi = pi); use fock:1");
                       }
                   },
                   [](const family::SqueezedVacuum& s) {
                       if (!(std::abs(s.zeta) < kMaxModulus)) throw DomainError("squeezed: |zeta| must be < 1 - 1e-9");
                   },
                   [](const family::CoherentPhase& p) {
                       if (!(std::abs(p.epsilon) < kMaxModulus)) throw DomainError("phase: |epsilon| must be < 1 - 1e-9");
                   },
                   [](const family::Thermal& t) {
                       if (!(t.nbar >= 0.0) || !std::isfinite(t.nbar)) throw DomainError("thermal: nbar must be >= 0");
                   },
               },
               spec.params);
}

StateSpec parse_state_spec(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError("state spec needs 'family:params', got '" + std::string(text) + "'");
    const std::string name(text.substr(0, colon));
    const auto fields = split(text.substr(colon + 1), ',');
    const std::size_t nf = fields.size();
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (nf < lo || nf > hi) throw ParseError("wrong number of parameters for '" + name + "'");
    };

    StateSpec spec;
    if (name == "fock") {
        need(1, 1);
        const double n = parse_double(fields[0]);
        if (n < 0 || n != std::floor(n) || n > 1e6) throw ParseError("fock: n must be a nonnegative integer");
        spec.params = family::Fock{static_cast<int>(n)};
    } else if (name == "coherent") {
        need(1, 2);
        spec.params = family::Coherent{parse_complex(fields, 0, nf)};
    } else if (name == "cat") {
        need(2, 3);
        if (nf == 2) {
            spec.params = family::Cat{{parse_double(fields[0]), 0.0}, parse_double(fields[1])};
        } else {
            spec.params = family::Cat{parse_complex(fields, 0, 2), parse_double(fields[2])};
        }
    } else if (name == "squeezed") {
        need(1, 2);
        spec.params = family::SqueezedVacuum{parse_complex(fields, 0, nf)};
    } else if (name == "phase") {
        need(1, 2);
        spec.params = family::CoherentPhase{parse_complex(fields, 0, nf)};
    } else if (name == "thermal") {
        need(1, 1);
        spec.params = family::Thermal{parse_double(fields[0])};
    } else if (name == "gencoh") {
        need(2, 3);
        const std::string& file = fields[nf - 1];
        if (file.empty() || file.front() != '@') throw ParseError("gencoh: last field must be @phasefile");
        spec.params = family::GeneralizedCoherent{parse_complex(fields, 0, nf - 1), read_phase_file(file.substr(1))};
    } else {
        throw ParseError("unknown state family '" + name + "'");
    }
    try {
        validate(spec);
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    return spec;
}

std::string to_string(const StateSpec& spec) {
    return std::visit(overloaded{
                          [](const family::Fock& f) { return fmt::format("fock:{}", f.n); },
                          [](const family::Coherent& c) { return fmt::format("coherent:{},{}", c.alpha.real(), c.alpha.imag()); },
                          [](const family::GeneralizedCoherent& g) {
                              return fmt::format("gencoh:{},{},<{} phases>", g.alpha.real(), g.alpha.imag(), g.phases.size());
                          },
                          [](const family::Cat& c) { return fmt::format("cat:{},{},{}", c.alpha.real(), c.alpha.imag(), c.phi); },
                          [](const family::SqueezedVacuum& s) { return fmt::format("squeezed:{},{}", s.zeta.real(), s.zeta.imag()); },
                          [](const family::CoherentPhase& p) { return fmt::format("phase:{},{}", p.epsilon.real(), p.epsilon.imag()); },
                          [](const family::Thermal& t) { return fmt::format("thermal:{}", t.nbar); },
                      },
                      spec.params);
}

std::vector<double> yurke_stoler_phases(int length) {
    std::vector<double> phases(static_cast<std::size_t>(std::max(length, 0)));
    for (std::size_t n = 0; n < phases.size(); ++n) phases[n] = (n % 2 == 0) ? 0.0 : -std::numbers::pi / 2.0;
    return phases;
}

double tail_mass(const StateSpec& spec, int dim) {
    check_dim(dim);
    return std::visit(
        overloaded{
            [&](const family::Fock& f) { return f.n < dim ? 0.0 : 1.0; },
            [&](const family::Coherent& c) { return poisson_tail(std::norm(c.alpha), dim); },
            [&](const family::GeneralizedCoherent& g) { return poisson_tail(std::norm(g.alpha), dim); },
            [&](const family::Cat& c) {
                const double lambda = std::norm(c.alpha);
                if (lambda == 0.0) return 0.0;
                const double denom = cat_denominator(c.alpha, c.phi);
                const double cphi = std::cos(c.phi);
                const double log_lambda = std::log(lambda);
                // p_n = Poisson(n) (1 + (-1)^n cos phi) / denom; bound odd/even weights by 2/denom when
                // the factor vanishes on one parity so the forward sum still terminates.
                double sum = 0.0;
                for (int k = dim;; ++k) {
                    const double pois = std::exp(-lambda + k * log_lambda - std::lgamma(k + 1.0));
                    const double weight = (1.0 + ((k % 2 == 0) ? cphi : -cphi)) / denom;
                    sum += pois * weight;
                    if ((k > dim + 8 && k > lambda && pois < 1e-20 * std::max(sum, 1e-300)) || k > dim + 200000) break;
                }
                return sum;
            },
            [&](const family::SqueezedVacuum& s) {
                const double r2 = std::norm(s.zeta);
                if (r2 == 0.0) return 0.0;
                const int first = (dim + 1) / 2;  // smallest n with 2n >= dim
                const double pre = 0.5 * std::log1p(-r2);
                const double lr = std::log(r2);
                return forward_tail(first, [&](int n) { return pre + 2.0 * log_squeezed_coeff(n) + n * lr; });
            },
            [&](const family::CoherentPhase& p) { return std::pow(std::norm(p.epsilon), dim); },
            [&](const family::Thermal& t) { return std::pow(t.nbar / (1.0 + t.nbar), dim); },
        },
        spec.params);
}

int adaptive_dim(const StateSpec& spec, double tail_tol, int max_dim) {
    if (!(tail_tol > 0.0 && tail_tol <= 1e-6)) throw DomainError("adaptive_dim: tail_tol must lie in (0, 1e-6]");
    validate(spec);
    // Exact-support families first.
    if (const auto* f = std::get_if<family::Fock>(&spec.params)) {
        const int d = (f->n + 1) / 8 * 8 + 8;
        if (d > max_dim) throw TruncationError(fmt::format("fock:{} needs dim {} > {}", f->n, d, max_dim));
        return d;
    }
    int d = 1;
    while (tail_mass(spec, d) >= tail_tol) {
        if (++d > max_dim) {
            throw TruncationError(fmt::format("{}: tail tolerance {:.0e} needs dim > {}", to_string(spec), tail_tol, max_dim));
        }
    }
    const int rounded = d / 8 * 8 + 8;
    if (rounded > max_dim) {
        throw TruncationError(fmt::format("{}: tail tolerance {:.0e} needs dim {} > {}", to_string(spec), tail_tol, rounded, max_dim));
    }
    return rounded;
}

FockVector fock(int n, int dim) {
    check_dim(dim);
    if (n < 0 || n >= dim) throw TruncationError(fmt::format("fock: n = {} not representable in dim {}", n, dim));
    Vector amp = Vector::Zero(dim);
    amp(n) = 1.0;
    return FockVector(std::move(amp));
}

FockVector coherent(complex alpha, int dim) {
    check_dim(dim);
    check_tail(StateSpec{family::Coherent{alpha}}, dim);
    Vector amp(dim);
    amp(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n) amp(n) = amp(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    return finish(std::move(amp));
}

FockVector generalized_coherent(complex alpha, std::span<const double> phases, int dim) {
    check_dim(dim);
    if (phases.size() < static_cast<std::size_t>(dim)) {
        throw DomainError(fmt::format("gencoh: phase table has {} entries, need {}", phases.size(), dim));
    }
    check_tail(StateSpec{family::Coherent{alpha}}, dim);
    Vector amp(dim);
    complex c = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < dim; ++n) {
        if (n > 0) c *= alpha / std::sqrt(static_cast<double>(n));
        amp(n) = c * std::polar(1.0, phases[static_cast<std::size_t>(n)]);
    }
    return finish(std::move(amp));
}

FockVector cat(complex alpha, double phi, int dim) {
    check_dim(dim);
    const StateSpec spec{family::Cat{alpha, phi}};
    validate(spec);
    check_tail(spec, dim);
    const double denom = cat_denominator(alpha, phi);
    const complex rel = std::polar(1.0, phi);
    Vector amp(dim);
    complex c = std::exp(-0.5 * std::norm(alpha)) / std::sqrt(2.0 * denom);
    for (int n = 0; n < dim; ++n) {
        if (n > 0) c *= alpha / std::sqrt(static_cast<double>(n));
        amp(n) = c * (1.0 + ((n % 2 == 0) ? rel : -rel));
    }
    return finish(std::move(amp));
}

FockVector squeezed_vacuum(complex zeta, int dim) {
    check_dim(dim);
    const StateSpec spec{family::SqueezedVacuum{zeta}};
    validate(spec);
    check_tail(spec, dim);
    Vector amp = Vector::Zero(dim);
    complex c = std::pow(1.0 - std::norm(zeta), 0.25);
    for (int n = 0; 2 * n < dim; ++n) {
        if (n > 0) c *= zeta * std::sqrt((2.0 * n - 1.0) / (2.0 * n));
        amp(2 * n) = c;
    }
    return finish(std::move(amp));
}

FockVector coherent_phase(complex epsilon, int dim) {
    check_dim(dim);
    const StateSpec spec{family::CoherentPhase{epsilon}};
    validate(spec);
    check_tail(spec, dim);
    Vector amp(dim);
    amp(0) = std::sqrt(1.0 - std::norm(epsilon));
    for (int n = 1; n < dim; ++n) amp(n) = amp(n - 1) * epsilon;
    return finish(std::move(amp));
}

DensityOperator thermal(double nbar, int dim) {
    check_dim(dim);
    const StateSpec spec{family::Thermal{nbar}};
    validate(spec);
    check_tail(spec, dim);
    const double x = nbar / (1.0 + nbar);
    Eigen::VectorXd p(dim);
    p(0) = 1.0 / (1.0 + nbar);
    for (int n = 1; n < dim; ++n) p(n) = p(n - 1) * x;
    p /= p.sum();
    return DensityOperator(p.cast<complex>().asDiagonal());
}

PreparedState prepare(const StateSpec& spec, int dim) {
    validate(spec);
    const double discarded = tail_mass(spec, dim);
    auto pure_state = [&](FockVector v) {
        DensityOperator rho = outer(v);
        return PreparedState{std::move(v), std::move(rho), discarded};
    };
    return std::visit(overloaded{
                          [&](const family::Fock& f) { return pure_state(fock(f.n, dim)); },
                          [&](const family::Coherent& c) { return pure_state(coherent(c.alpha, dim)); },
                          [&](const family::GeneralizedCoherent& g) {
                              return pure_state(generalized_coherent(g.alpha, g.phases, dim));
                          },
                          [&](const family::Cat& c) { return pure_state(cat(c.alpha, c.phi, dim)); },
                          [&](const family::SqueezedVacuum& s) { return pure_state(squeezed_vacuum(s.zeta, dim)); },
                          [&](const family::CoherentPhase& p) { return pure_state(coherent_phase(p.epsilon, dim)); },
                          [&](const family::Thermal& t) {
                              return PreparedState{std::nullopt, thermal(t.nbar, dim), discarded};
                          },
                      },
                      spec.params);
}

double mean_photon_number(const DensityOperator& rho) {
    double s = 0.0;
    for (int n = 1; n < rho.dim(); ++n) s += n * rho(n, n).real();
    return s;
}

double mandel_q(const DensityOperator& rho) {
    double n1 = 0.0;
    double n2 = 0.0;
    for (int n = 1; n < rho.dim(); ++n) {
        const double p = rho(n, n).real();
        n1 += n * p;
        n2 += static_cast<double>(n) * n * p;
    }
    if (!(n1 > 1e-14)) throw DomainError("mandel_q: undefined for <N> = 0");
    return n2 / n1 - n1 - 1.0;
}

complex moment(const DensityOperator& rho, int k, int l) {
    const int dim = rho.dim();
    if (k < 0 || l < 0 || k >= dim || l >= dim) {
        throw DomainError(fmt::format("moment: ({}, {}) overflows truncation dim {}", k, l, dim));
    }
    // a^dag^k a^l |n> = sqrt(n! m!) / (n-l)! |m>, m = n - l + k
    complex sum = 0.0;
    for (int n = l; n < dim; ++n) {
        const int m = n - l + k;
        if (m >= dim) break;
        const double log_coeff = 0.5 * (std::lgamma(n + 1.0) + std::lgamma(m + 1.0)) - std::lgamma(n - l + 1.0);
        sum += std::exp(log_coeff) * rho(n, m);
    }
    return sum;
}

MomentTable moment_table(const DensityOperator& rho, int cutoff) {
    if (cutoff < 0) throw DomainError("moment_table: negative cutoff");
    MomentTable t{cutoff, Matrix(cutoff + 1, cutoff + 1)};
    for (int k = 0; k <= cutoff; ++k) {
        for (int l = 0; l <= cutoff; ++l) t.m(k, l) = moment(rho, k, l);
    }
    return t;
}

Reconstruction reconstruct_from_moments(const MomentTable& table, int dim) {
    check_dim(dim);
    const int K = table.cutoff;
    if (table.m.rows() != K + 1 || table.m.cols() != K + 1) throw DomainError("reconstruct_from_moments: malformed table");
    Matrix rho = Matrix::Zero(dim, dim);
    for (int k = 0; k <= K; ++k) {
        for (int l = 0; l <= K; ++l) {
            const complex mkl = table.m(k, l);
            if (mkl == complex{}) continue;
            for (int j = 0; j <= std::min(k, l); ++j) {
                const int row = l - j;
                const int col = k - j;
                if (row >= dim || col >= dim) continue;
                const double coeff = std::exp(-std::lgamma(j + 1.0) - 0.5 * (std::lgamma(col + 1.0) + std::lgamma(row + 1.0)));
                rho(row, col) += ((j % 2 == 0) ? coeff : -coeff) * mkl;
            }
        }
    }
    rho = 0.5 * (rho + rho.adjoint());
    const double tr = rho.trace().real();
    const double deviation = std::abs(tr - 1.0);
    if (deviation > 1e-3) {
        throw TruncationError(fmt::format("reconstruct_from_moments: trace {} (cutoff {} insufficient)", tr, K));
    }
    rho /= tr;
    return {DensityOperator(std::move(rho)), deviation};
}

}  // namespace qdist
