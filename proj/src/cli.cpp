#include "qdist/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qdist/closed_forms.hpp"
#include "qdist/distances.hpp"
#include "qdist/errors.hpp"
#include "qdist/figures.hpp"
#include "qdist/phase_space.hpp"
#include "qdist/tomography.hpp"

namespace qdist::cli {

namespace {

bool treat_as_pure(const StateSpec& s) { return s.is_pure() || s.is_vacuum(); }

bool pure_only(std::string_view metric) { return metric == "fs" || metric == "minimal" || metric == "wootters"; }

std::optional<complex> coherent_amplitude(const StateSpec& s) {
    if (s.is_vacuum()) return complex{};
    if (const auto* c = std::get_if<family::Coherent>(&s.params)) return c->alpha;
    return std::nullopt;
}

std::optional<int> fock_index(const StateSpec& s) {
    if (s.is_vacuum()) return 0;
    if (const auto* f = std::get_if<family::Fock>(&s.params)) return f->n;
    return std::nullopt;
}

std::optional<complex> squeezing(const StateSpec& s) {
    if (s.is_vacuum()) return complex{};
    if (const auto* z = std::get_if<family::SqueezedVacuum>(&s.params)) return z->zeta;
    return std::nullopt;
}

std::optional<complex> phase_param(const StateSpec& s) {
    if (s.is_vacuum()) return complex{};
    if (const auto* e = std::get_if<family::CoherentPhase>(&s.params)) return e->epsilon;
    return std::nullopt;
}

std::optional<double> thermal_nbar(const StateSpec& s) {
    if (s.is_vacuum()) return 0.0;
    if (const auto* t = std::get_if<family::Thermal>(&s.params)) return t->nbar;
    return std::nullopt;
}

const family::Cat* as_cat(const StateSpec& s) {
    return s.is_vacuum() ? nullptr : std::get_if<family::Cat>(&s.params);
}

// Closed forms keyed by library names: hs, dN, Da, DN, bu, dN_sqrt.
closed::ClosedFormResult lookup(const StateSpec& a, const StateSpec& b) {
    closed::ClosedFormResult r;
    if (auto fa = fock_index(a), fb = fock_index(b); fa && fb) {
        r = closed::fock_pair(*fa, *fb);
        if (a.is_vacuum() && b.is_vacuum()) r.values["Da"] = 0.0;
        return r;
    }
    if (auto ca = coherent_amplitude(a), cb = coherent_amplitude(b); ca && cb) return closed::coherent_pair(*ca, *cb);
    if (auto ca = coherent_amplitude(a); ca) {
        if (auto fb = fock_index(b); fb) return closed::coherent_fock(*ca, *fb);
    }
    if (auto cb = coherent_amplitude(b); cb) {
        if (auto fa = fock_index(a); fa) return closed::coherent_fock(*cb, *fa);
    }
    if (auto za = squeezing(a), zb = squeezing(b); za && zb) return closed::squeezed_pair(*za, *zb);
    if (auto ea = phase_param(a), eb = phase_param(b); ea && eb) return closed::phase_pair(*ea, *eb);
    if (auto na = thermal_nbar(a), nb = thermal_nbar(b); na && nb) return closed::thermal_pair(*na, *nb);

    const family::Cat* cat_a = as_cat(a);
    const family::Cat* cat_b = as_cat(b);
    const StateSpec* other = nullptr;
    if (cat_a && cat_b) {
        if (cat_a->alpha != cat_b->alpha) return r;
        const auto c = closed::cat_distances(cat_a->alpha, cat_a->phi, cat_b->phi);
        r.values["hs"] = c.at("d_between");
        r.values["dN"] = c.at("dN_between");
        return r;
    }
    if (cat_a) {
        other = &b;
    } else if (cat_b) {
        other = &a;
        std::swap(cat_a, cat_b);
    } else {
        return r;
    }
    const auto c = closed::cat_distances(cat_a->alpha, cat_a->phi, cat_a->phi);
    if (other->is_vacuum()) {
        r.values["hs"] = c.at("d_to_vacuum");
        r.values["dN"] = c.at("dN_to_vacuum");
    } else if (auto co = coherent_amplitude(*other); co && *co == cat_a->alpha) {
        r.values["hs"] = c.at("d_to_coherent");
    }
    return r;
}

int to_int(std::string_view text, const char* what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) throw ParseError(fmt::format("bad {} '{}'", what, text));
    return v;
}

int parse_dim(const std::string& text, int max_dim) {
    if (text == "auto") return 0;
    const int d = to_int(text, "--dim");
    if (d < 1) throw ParseError("--dim must be positive or 'auto'");
    if (d > max_dim) throw DomainError(fmt::format("--dim {} exceeds the cap {}", d, max_dim));
    return d;
}

std::string fmt_value(double v) { return fmt::format("{:.12g}", v); }

std::string closed_columns(std::optional<double> closed, double value) {
    if (!closed) return ",";
    return fmt::format("{},{}", fmt_value(*closed), fmt_value(std::abs(*closed - value)));
}

std::string substitute(const std::string& spec, double t) {
    std::string out = spec;
    const std::string mark = "{t}";
    const std::string val = fmt::format("{:.17g}", t);
    for (std::size_t pos = out.find(mark); pos != std::string::npos; pos = out.find(mark, pos + val.size())) {
        out.replace(pos, mark.size(), val);
    }
    return out;
}

// Runs `body` writing to --out if given, else to `out`.
int with_output(const std::string& path, std::ostream& out, std::ostream& err,
                const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(out);
        return kOk;
    }
    std::ofstream file(path);
    if (!file) {
        err << "error: cannot open " << path << " for writing\n";
        return kIoFailure;
    }
    body(file);
    file.flush();
    if (!file) {
        err << "error: write to " << path << " failed\n";
        return kIoFailure;
    }
    return kOk;
}

}  // namespace

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names{"fs",      "minimal", "wootters", "hs", "jmg",
                                                "bu",      "hs-p",    "dn",       "dn-sqrt", "DZ",
                                                "Da",      "hs-wigner", "hs-qp",  "hs-pp"};
    return names;
}

std::optional<double> closed_form_value(const StateSpec& a, const StateSpec& b, std::string_view metric, double p) {
    const closed::ClosedFormResult r = lookup(a, b);
    auto get = [&](const char* key) -> std::optional<double> {
        if (r.has(key)) return r.at(key);
        return std::nullopt;
    };
    if (metric == "hs" || metric == "hs-wigner" || metric == "hs-qp" || metric == "hs-pp") return get("hs");
    if (metric == "dn") return get("dN");
    if (metric == "dn-sqrt") return get("dN_sqrt");
    if (metric == "Da") return get("Da");
    if (metric == "DZ") return get("DN");

    // Pure pairs: every overlap-based metric follows from hs^2 = 2 (1 - |<a|b>|^2).
    if (treat_as_pure(a) && treat_as_pure(b)) {
        const auto hs = get("hs");
        if (!hs) return std::nullopt;
        const double f = std::sqrt(std::clamp(1.0 - 0.5 * *hs * *hs, 0.0, 1.0));
        if (metric == "fs" || metric == "hs-p") return *hs;
        if (metric == "minimal" || metric == "bu") return std::sqrt(2.0 * (1.0 - f));
        if (metric == "wootters") return std::acos(f);
        if (metric == "jmg") return std::sqrt(1.0 - f * f);
        return std::nullopt;
    }
    if (metric == "bu") return get("bu");
    // Commuting states: ||r1^{1/2} - r2^{1/2}||_2 equals the Bures-Uhlmann distance.
    if (metric == "hs-p" && p == 0.5) return get("bu");
    return std::nullopt;
}

Evaluation evaluate(const StateSpec& a, const StateSpec& b, std::string_view metric, int dim, int max_dim, double p,
                    int grid) {
    const auto& names = metric_names();
    if (std::find(names.begin(), names.end(), metric) == names.end()) {
        throw ParseError(fmt::format("unknown metric '{}'", metric));
    }
    if (pure_only(metric) && !(treat_as_pure(a) && treat_as_pure(b))) {
        throw UnsupportedError(fmt::format("metric {} needs pure states", metric));
    }
    if (dim == 0) {
        dim = std::max(adaptive_dim(a, kDefaultTailTolerance, max_dim), adaptive_dim(b, kDefaultTailTolerance, max_dim));
    }

    if (metric == "hs-wigner" || metric == "hs-qp" || metric == "hs-pp") {
        const PhaseSpaceForm form = metric == "hs-wigner" ? PhaseSpaceForm::wigner
                                    : metric == "hs-qp"   ? PhaseSpaceForm::qp
                                                          : PhaseSpaceForm::pp;
        return {hs_from_phase_space(a, b, form, {dim, grid}), dim};
    }

    const PreparedState sa = prepare(a, dim);
    const PreparedState sb = prepare(b, dim);
    const auto& r1 = sa.rho;
    const auto& r2 = sb.rho;
    double v = 0.0;
    if (metric == "fs" || metric == "minimal" || metric == "wootters") {
        const PureKind kind = metric == "fs" ? PureKind::fubini_study
                              : metric == "minimal" ? PureKind::minimal
                                                    : PureKind::wootters;
        // A vacuum written as thermal:0 has no state vector; its density matrix is |0><0|.
        const FockVector va = sa.pure ? *sa.pure : fock(0, dim);
        const FockVector vb = sb.pure ? *sb.pure : fock(0, dim);
        v = pure_state_distance(va, vb, kind);
    } else if (metric == "hs") {
        v = hilbert_schmidt(r1, r2);
    } else if (metric == "jmg") {
        v = jmg_distance(r1, r2);
    } else if (metric == "bu") {
        v = bures_uhlmann(r1, r2);
    } else if (metric == "hs-p") {
        v = modified_hs(r1, r2, p);
    } else if (metric == "dn") {
        v = polarized(r1, r2, PolarizationOperator::number(dim));
    } else if (metric == "dn-sqrt") {
        v = polarized_sqrt(r1, r2, PolarizationOperator::number(dim));
    } else if (metric == "DZ") {
        v = quasidistance_DZ(r1, r2, PolarizationOperator::number(dim));
    } else if (metric == "Da") {
        v = quasidistance_Da(r1, r2);
    }
    return {v, dim};
}

int max_dim_from_env() {
    const char* raw = std::getenv("QDIST_MAX_DIM");
    if (raw == nullptr || *raw == '\0') return kDefaultMaxDim;
    const int v = to_int(raw, "QDIST_MAX_DIM");
    if (v < 1) throw ParseError("QDIST_MAX_DIM must be positive");
    return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Distances between quantum states in a truncated Fock basis", "qdist"};
    app.require_subcommand(1);

    std::string a_text, b_text, metric = "hs", dim_text = "auto", out_path;
    double p = 0.5;
    int grid = 257;

    auto* distance = app.add_subcommand("distance", "Distance between two states");
    auto* sweep = app.add_subcommand("sweep", "Distance over a one-parameter family; {t} in a spec is the parameter");
    for (auto* sub : {distance, sweep}) {
        sub->add_option("--a", a_text, "First state")->required();
        sub->add_option("--b", b_text, "Second state")->required();
        sub->add_option("--metric", metric, "Metric")->capture_default_str();
        sub->add_option("--dim", dim_text, "Truncation dimension or 'auto'")->capture_default_str();
        sub->add_option("--p", p, "Exponent for hs-p")->capture_default_str();
        sub->add_option("--grid", grid, "Phase-space points per axis")->capture_default_str();
        sub->add_option("--out", out_path, "Output file (default: standard output)");
    }
    double from = 0.0, to = 1.0;
    int steps = 11;
    sweep->add_option("--from", from, "First parameter value")->required();
    sweep->add_option("--to", to, "Last parameter value")->required();
    sweep->add_option("--steps", steps, "Number of rows")->capture_default_str();

    int figure_id = 0;
    auto* figure = app.add_subcommand("figure", "Figure data as CSV");
    figure->add_option("id", figure_id, "1 or 2")->required();
    figure->add_option("--out", out_path, "Output file (default: standard output)");

    std::string kind_text = "hellinger";
    int radial = 48, angular = 64;
    auto* tomo = app.add_subcommand("tomo-distance", "Tomographic distance between two states");
    tomo->add_option("--a", a_text, "First state")->required();
    tomo->add_option("--b", b_text, "Second state")->required();
    tomo->add_option("--kind", kind_text, "hellinger|kolmogorov|bhattacharyya|kullback")->capture_default_str();
    tomo->add_option("--nodes-radial", radial, "Radial quadrature nodes")->capture_default_str();
    tomo->add_option("--nodes-angular", angular, "Angular quadrature nodes")->capture_default_str();
    tomo->add_option("--out", out_path, "Output file (default: standard output)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseFailure;
    }

    try {
        const int max_dim = max_dim_from_env();
        if (*distance) {
            const StateSpec a = parse_state_spec(a_text);
            const StateSpec b = parse_state_spec(b_text);
            const Evaluation ev = evaluate(a, b, metric, parse_dim(dim_text, max_dim), max_dim, p, grid);
            const auto closed = closed_form_value(a, b, metric, p);
            return with_output(out_path, out, err, [&](std::ostream& o) {
                o << "metric,value,dim,closed_form_value,abs_diff\n";
                o << fmt::format("{},{},{},{}\n", metric, fmt_value(ev.value), ev.dim, closed_columns(closed, ev.value));
            });
        }
        if (*sweep) {
            if (steps < 1 || from > to) throw ParseError("sweep: empty range");
            if (a_text.find("{t}") == std::string::npos && b_text.find("{t}") == std::string::npos) {
                throw ParseError("sweep: no {t} placeholder in --a or --b");
            }
            const int dim = parse_dim(dim_text, max_dim);
            std::vector<std::string> rows;
            for (int i = 0; i < steps; ++i) {
                const double t = steps == 1 ? from : from + (to - from) * i / (steps - 1);
                const StateSpec a = parse_state_spec(substitute(a_text, t));
                const StateSpec b = parse_state_spec(substitute(b_text, t));
                const Evaluation ev = evaluate(a, b, metric, dim, max_dim, p, grid);
                rows.push_back(fmt::format("{},{},{},{},{}\n", fmt_value(t), metric, fmt_value(ev.value), ev.dim,
                                           closed_columns(closed_form_value(a, b, metric, p), ev.value)));
            }
            return with_output(out_path, out, err, [&](std::ostream& o) {
                o << "t,metric,value,dim,closed_form_value,abs_diff\n";
                for (const auto& r : rows) o << r;
            });
        }
        if (*figure) {
            if (figure_id == 1) return with_output(out_path, out, err, [](std::ostream& o) { write_figure1(o, figure1()); });
            if (figure_id == 2) return with_output(out_path, out, err, [](std::ostream& o) { write_figure2(o, figure2()); });
            throw ParseError(fmt::format("unknown figure {}", figure_id));
        }
        if (*tomo) {
            const StateSpec a = parse_state_spec(a_text);
            const StateSpec b = parse_state_spec(b_text);
            const DivergenceKind kind = parse_divergence_kind(kind_text);
            const double v = tomographic_distance(a, b, kind, {}, radial, angular);
            std::optional<double> closed;
            if (auto ca = coherent_amplitude(a), cb = coherent_amplitude(b); ca && cb && kind != DivergenceKind::kolmogorov) {
                closed = closed::tomographic_coherent(*ca, *cb).at(to_string(kind));
            }
            return with_output(out_path, out, err, [&](std::ostream& o) {
                o << "kind,value,closed_form_value,abs_diff\n";
                o << fmt::format("{},{},{}\n", to_string(kind), fmt_value(v), closed_columns(closed, v));
            });
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseFailure;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kParseFailure;
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << '\n';
        return kUnsupported;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kOk;
}

}  // namespace qdist::cli
