// metarep: counting, construction, and deformation of irreducible metabelian
// SL(n,C) representations of knot groups.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "metarep/boundary.hpp"
#include "metarep/deform.hpp"
#include "metarep/errors.hpp"
#include "metarep/jsonio.hpp"

using namespace metarep;

namespace {

enum Exit { OK = 0, INPUT = 2, RESOURCE = 3, NOT_APPLICABLE = 4 };

std::pair<long, long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        long n = std::stol(s);
        return {n, n};
    }
    return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
}

std::shared_ptr<const FinAbT> cover_group(const KnotPresentation& p, long n) {
    return std::make_shared<FinAbT>(branched_homology(p, n));
}

Character chi_at(const KnotPresentation& p, long n, long index) {
    auto reps = orbit_representatives(cover_group(p, n), n);
    if (reps.empty()) throw InfiniteFamily("no order-" + std::to_string(n) + " characters");
    if (index < 0 || index >= static_cast<long>(reps.size()))
        throw ParseError("--chi index out of range (have " + std::to_string(reps.size()) +
                         " orbit representatives)");
    return reps[static_cast<size_t>(index)];
}

void emit(const json& j, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_count(const std::string& knot, const std::string& range, bool as_json) {
    auto p = resolve_knot_spec(knot);
    auto delta = alexander_poly(p);
    auto [lo, hi] = parse_range(range);
    json rows = json::array();
    std::string text = "  n  classes\n";
    for (long n = lo; n <= hi; ++n) {
        auto c = count_classes(p, n);
        json row;
        row["n"] = n;
        char buf[160];
        if (c) {
            row["classes"] = c->get_str();
            row["infinite"] = false;
            std::snprintf(buf, sizeof buf, "%3ld  %s\n", n, c->get_str().c_str());
        } else {
            row["classes"] = nullptr;
            row["infinite"] = true;
            std::snprintf(buf, sizeof buf, "%3ld  infinite (b1(L_n) > 0)\n", n);
        }
        text += buf;
        rows.push_back(std::move(row));
    }
    json out;
    out["knot"] = knot;
    out["alexander"] = laurent_to_json(delta);
    out["counts"] = std::move(rows);
    emit(out, as_json, text);
    return OK;
}

int cmd_reps(const std::string& knot, long n, long chi_index, bool all, bool as_json) {
    auto p = resolve_knot_spec(knot);
    auto hn = cover_group(p, n);
    auto reps = orbit_representatives(hn, n);
    if (reps.empty()) {
        std::cerr << "no irreducible metabelian classes at n = " << n << "\n";
        return NOT_APPLICABLE;
    }
    json out;
    out["knot"] = knot;
    out["n"] = n;
    out["group"] = finabt_to_json(*hn);
    json arr = json::array();
    std::string text;
    for (long i = 0; i < static_cast<long>(reps.size()); ++i) {
        if (!all && i != chi_index) continue;
        auto rep = build_rep(p, n, reps[static_cast<size_t>(i)]);
        json jr = representation_to_json(rep);
        jr["chi_index"] = i;
        text += "chi " + std::to_string(i) + ": field Q(zeta_" + std::to_string(rep.field) +
                "), " + std::to_string(rep.exact.size()) + " generator images\n";
        arr.push_back(std::move(jr));
    }
    out["representations"] = std::move(arr);
    emit(out, as_json, text);
    return OK;
}

int cmd_cohomology(const std::string& knot, long n, long chi_index, bool as_json,
                   const std::string& backend) {
    auto p = resolve_knot_spec(knot);
    Character chi = chi_at(p, n, chi_index);
    auto ad = adjoint_rep(build_rep(p, n, chi));
    auto rep = cohomology_dims(p, backend == "float" ? ad.to_float() : ad);
    json out;
    out["knot"] = knot;
    out["n"] = n;
    out["chi"] = chi_index;
    out["backend"] = backend;
    out["cohomology"] = cohomology_to_json(rep);
    auto v = criterion_check(p, n, chi);
    out["criterion"] = {{"h1", v.h1}, {"met", v.criterion_met}, {"b1_Ln", v.b1_ln}};
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "h0 = %ld  z1 = %ld  b1 = %ld  h1 = %ld  criterion(h1 = n-1): %s\n", rep.h0,
                  rep.z1, rep.b1_dim, rep.h1, v.criterion_met ? "met" : "NOT met");
    emit(out, as_json, buf);
    return OK;
}

int cmd_cover(const std::string& knot, long n, long chi_index, long cap, bool as_json) {
    auto p = resolve_knot_spec(knot);
    Character chi = chi_at(p, n, chi_index);
    auto cb = cover_betti(p, n, chi, cap);
    json out;
    out["knot"] = knot;
    out["n"] = n;
    out["homology"] = finabt_to_json(chi.ambient());
    out["cover"] = cover_betti_to_json(cb);
    char buf[200];
    std::snprintf(buf, sizeof buf, "k = |H| = %s  b1(N_phi) = %ld  equality: %s\n",
                  cb.k.get_str().c_str(), cb.b1_tilde, cb.equality ? "yes" : "no");
    emit(out, as_json, buf);
    return OK;
}

int cmd_twisted_alex(const std::string& knot, long n, long chi_index,
                     const std::string& which, bool as_json) {
    auto p = resolve_knot_spec(knot);
    Representation rho;
    if (which == "trivial") {
        rho = trivial_rep(p);
    } else {
        Character chi = chi_at(p, n, chi_index);
        rho = which == "adjoint" ? adjoint_rep(build_rep(p, n, chi)) : build_rep(p, n, chi);
    }
    auto wada = twisted_alexander(p, rho);
    json out;
    out["knot"] = knot;
    out["rep"] = which;
    out["removed_generator"] = wada.removed_generator;
    out["numerator"] = cycpoly_to_json(wada.numerator);
    out["denominator"] = cycpoly_to_json(wada.denominator);
    std::string text = "numerator terms: " + std::to_string(wada.numerator.coeffs.size()) +
                       ", denominator terms: " +
                       std::to_string(wada.denominator.coeffs.size()) + "\n";
    emit(out, as_json, text);
    return OK;
}

int cmd_sw(const std::string& knot, const std::string& range, bool as_json) {
    auto p = resolve_knot_spec(knot);
    auto delta = alexander_poly(p);
    auto [lo, hi] = parse_range(range);
    double lnm = std::log(mahler(delta));
    json rows = json::array();
    std::string text = "  n  |Tor H1(L_n)|            ln|Tor|/n\n";
    for (long n = lo; n <= hi; ++n) {
        auto tor = torsion_order_resultant(delta, n);
        auto r = sw_ratio(delta, n);
        json row;
        row["n"] = n;
        row["torsion_order"] = tor ? json(tor->get_str()) : json(nullptr);
        char buf[160];
        if (r) {
            row["ratio"] = *r;
            std::snprintf(buf, sizeof buf, "%3ld  %-24s  %.10f\n", n, tor->get_str().c_str(), *r);
        } else {
            row["ratio"] = nullptr;
            std::snprintf(buf, sizeof buf, "%3ld  infinite\n", n);
        }
        rows.push_back(std::move(row));
        text += buf;
    }
    json out;
    out["knot"] = knot;
    out["ln_mahler"] = lnm;
    out["ratios"] = std::move(rows);
    char buf[80];
    std::snprintf(buf, sizeof buf, "ln m = %.10f\n", lnm);
    emit(out, as_json, text + buf);
    return OK;
}

int cmd_deform(const std::string& knot, long n, long chi_index, int order, int nsteps,
               double step_size, bool as_json, bool as_csv) {
    auto p = resolve_knot_spec(knot);
    Character chi = chi_at(p, n, chi_index);
    auto alpha = build_rep(p, n, chi);
    auto cs = cocycle_spaces(p, alpha);
    auto series = solve_formal(p, alpha, cs.h1_reps[0], order);
    std::vector<double> ts;
    for (int j = 1; j <= nsteps; ++j) ts.push_back(step_size * j);
    auto steps = newton_deform(p, alpha, cs.h1_reps[0], ts);

    json out;
    out["knot"] = knot;
    out["n"] = n;
    out["chi"] = chi_index;
    out["dim_z1"] = cs.dim_z1;
    out["dim_b1"] = cs.dim_b1;
    out["dim_h1"] = cs.dim_h1;
    json res = json::array();
    for (double r : series.residuals) res.push_back(r);
    out["formal_residuals"] = std::move(res);
    json table = json::array();
    auto words = probe_words(p);
    for (const auto& s : steps) {
        json row;
        row["t"] = s.t;
        row["iterations"] = s.iterations;
        row["residual"] = s.residual;
        row["certified_nonmetabelian"] = certify_nonmetabelian(s.rep, p, n);
        json probe = json::array();
        for (auto z : s.probe) probe.push_back({{"re", z.real()}, {"im", z.imag()}});
        row["probe"] = std::move(probe);
        table.push_back(std::move(row));
    }
    out["steps"] = std::move(table);

    if (as_csv) {
        std::string csv = "t,iterations,residual";
        for (size_t i = 0; i < words.size(); ++i)
            csv += ",re_tr_w" + std::to_string(i) + ",im_tr_w" + std::to_string(i);
        csv += "\n";
        for (const auto& s : steps) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "%.6f,%d,%.3e", s.t, s.iterations, s.residual);
            csv += buf;
            for (auto z : s.probe) {
                std::snprintf(buf, sizeof buf, ",%.12f,%.12f", z.real(), z.imag());
                csv += buf;
            }
            csv += "\n";
        }
        std::cout << csv;
        return OK;
    }
    std::string text;
    {
        text = "formal residuals per order:";
        for (double r : series.residuals) {
            char buf[32];
            std::snprintf(buf, sizeof buf, " %.2e", r);
            text += buf;
        }
        text += "\nnewton steps:\n";
        for (const auto& s : steps) {
            char buf[120];
            std::snprintf(buf, sizeof buf, "  t = %.3f  iters = %d  residual = %.2e\n", s.t,
                          s.iterations, s.residual);
            text += buf;
        }
    }
    emit(out, as_json, text);
    return OK;
}

int cmd_pipeline(const std::string& knot, long n, bool as_json, unsigned long seed) {
    auto p = resolve_knot_spec(knot);
    json out;
    out["knot"] = knot;
    out["n"] = n;
    out["seed"] = seed;
    std::string text;

    auto delta = alexander_poly(p);
    auto c = count_classes(delta, n);
    if (!c) {
        out["stage"] = "count";
        out["error"] = "InfiniteFamily: b1(L_n) > 0, Theorem hypotheses not applicable";
        emit(out, as_json, "count: infinite family (b1(L_n) > 0); not applicable\n");
        return NOT_APPLICABLE;
    }
    out["count"] = c->get_str();
    text += "count: " + c->get_str() + "\n";
    if (*c == 0) {
        out["stage"] = "count";
        out["note"] = "no irreducible metabelian classes at this rank";
        emit(out, as_json, text + "no classes; stopping\n");
        return NOT_APPLICABLE;
    }

    Character chi = chi_at(p, n, 0);
    auto alpha = build_rep(p, n, chi);
    out["representation"] = representation_to_json(alpha);
    text += "built alpha_(n,chi) over Q(zeta_" + std::to_string(alpha.field) + ")\n";

    auto v = criterion_check(p, n, chi);
    out["criterion"] = {{"h1", v.h1}, {"met", v.criterion_met}, {"b1_Ln", v.b1_ln}};
    text += "criterion: h1 = " + std::to_string(v.h1) + " (n-1 = " + std::to_string(n - 1) +
            ") " + (v.criterion_met ? "met" : "NOT met") + "\n";

    auto cb = cover_betti(p, n, chi);
    out["cover"] = cover_betti_to_json(cb);
    text += "cover: k = " + cb.k.get_str() + ", b1 = " + std::to_string(cb.b1_tilde) +
            (cb.equality ? " (equality)" : " (no equality)") + "\n";

    if (!v.criterion_met) {
        emit(out, as_json, text + "deformation skipped: criterion not met\n");
        return NOT_APPLICABLE;
    }

    auto cs = cocycle_spaces(p, alpha);
    auto series = solve_formal(p, alpha, cs.h1_reps[0], 3);
    json res = json::array();
    for (double r : series.residuals) res.push_back(r);
    out["formal_residuals"] = std::move(res);
    auto steps = newton_deform(p, alpha, cs.h1_reps[0], {0.02, 0.04, 0.06, 0.08, 0.1});
    bool certified = certify_nonmetabelian(steps.back().rep, p, n);
    out["deform"] = {{"t_max", steps.back().t},
                     {"residual", steps.back().residual},
                     {"certified_nonmetabelian", certified}};
    text += std::string("deform: certified non-metabelian at t = 0.1: ") +
            (certified ? "yes" : "NO") + "\n";
    emit(out, as_json, text);
    return OK;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"metabelian SL(n,C) representations of knot groups"};
    app.require_subcommand(1);

    std::string knot, range = "1..12", backend = "exact", which = "adjoint";
    long n = 2, chi_index = 0, cap = 10000;
    int order = 4, nsteps = 5;
    double step_size = 0.02;
    bool as_json = false, as_csv = false, all_reps = false;
    unsigned long seed = 0x5EED;

    auto add_knot = [&](CLI::App* cmd) {
        cmd->add_option("knot", knot,
                        "knot spec: table name (4_1), unknot, torus:p,q, "
                        "braid:<word>:<strands>, pd:(a,b,c,d)..., manual:<file>")
            ->required();
        cmd->add_flag("--json", as_json, "emit JSON");
    };

    auto* count = app.add_subcommand("count", "conjugacy classes of irreducible metabelian "
                                              "SL(n,C) representations per rank");
    add_knot(count);
    count->add_option("--n-range", range, "rank range a..b");

    auto* reps = app.add_subcommand("reps", "exact generator matrices of the metabelian classes");
    add_knot(reps);
    reps->add_option("--n", n, "rank")->required();
    reps->add_option("--chi", chi_index, "orbit representative index");
    reps->add_flag("--all", all_reps, "emit every class");

    auto* coh = app.add_subcommand("cohomology", "twisted cohomology of ad alpha and the "
                                                 "smoothness criterion h1 = n-1");
    add_knot(coh);
    coh->add_option("--n", n, "rank")->required();
    coh->add_option("--chi", chi_index, "orbit representative index");
    coh->add_option("--backend", backend, "exact | float");

    auto* cover = app.add_subcommand("cover", "Betti number certificate of the metabelian cover");
    add_knot(cover);
    cover->add_option("--n", n, "rank")->required();
    cover->add_option("--chi", chi_index, "orbit representative index");
    cover->add_option("--cap", cap, "largest tolerated |H|");

    auto* talex = app.add_subcommand("twisted-alex", "Wada invariant numerator/denominator");
    add_knot(talex);
    talex->add_option("--n", n, "rank");
    talex->add_option("--chi", chi_index, "orbit representative index");
    talex->add_option("--rep", which, "trivial | metab | adjoint");

    auto* sw = app.add_subcommand("sw", "ln|Tor H_1(L_n)|/n against ln(Mahler measure)");
    add_knot(sw);
    sw->add_option("--n-range", range, "range a..b");

    auto* deform = app.add_subcommand("deform", "formal and Newton deformations near a "
                                                "metabelian character");
    add_knot(deform);
    deform->add_option("--n", n, "rank")->required();
    deform->add_option("--chi", chi_index, "orbit representative index");
    deform->add_option("--order", order, "formal solve order K");
    deform->add_option("--steps", nsteps, "number of Newton continuation steps");
    deform->add_option("--step-size", step_size, "t increment per step");
    deform->add_flag("--csv", as_csv, "emit the probe table as CSV");

    auto* pipe = app.add_subcommand("pipeline", "count -> build -> criterion -> cover -> deform");
    add_knot(pipe);
    pipe->add_option("--n", n, "rank")->required();
    pipe->add_option("--seed", seed, "recorded in the report for reproducibility");

    CLI11_PARSE(app, argc, argv);

    try {
        if (count->parsed()) return cmd_count(knot, range, as_json);
        if (reps->parsed()) return cmd_reps(knot, n, chi_index, all_reps, as_json);
        if (coh->parsed()) return cmd_cohomology(knot, n, chi_index, as_json, backend);
        if (cover->parsed()) return cmd_cover(knot, n, chi_index, cap, as_json);
        if (talex->parsed()) return cmd_twisted_alex(knot, n, chi_index, which, as_json);
        if (sw->parsed()) return cmd_sw(knot, range, as_json);
        if (deform->parsed())
            return cmd_deform(knot, n, chi_index, order, nsteps, step_size, as_json, as_csv);
        if (pipe->parsed()) return cmd_pipeline(knot, n, as_json, seed);
    } catch (const Intractable& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return RESOURCE;
    } catch (const InfiniteFamily& e) {
        std::cerr << "not applicable: " << e.what() << "\n";
        return NOT_APPLICABLE;
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return INPUT;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return INPUT;
    }
    return INPUT;
}
