// pgsheaf: support-scheme sheaf computations for modular representations.
//
// Subcommands:
//   compute {h,f,ker,im,coker,support,theta}  sheaf reports
//   jtype                                     local Jordan types at points
//   verify {fig1,sl2-regular,bgg-values,fomega,thick}  verification bundles
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 mathematical precondition violation.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgsheaf/io.hpp"

using namespace pgsheaf;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string group;
    std::string module;
    std::uint32_t p = 0;
    std::uint32_t i = 1;
    std::uint32_t j = 1;
    std::uint32_t r = 0;
    std::string point;
    std::size_t sample = 0;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string out;
};

void emit(const CommonOpts& opts, const json& report, const std::string& text) {
    std::string payload = opts.format == "json" ? report.dump(2) + "\n" : text;
    if (!opts.out.empty()) {
        std::ofstream f(opts.out);
        if (!f) throw InputError("cannot write to '" + opts.out + "'");
        f << payload;
    } else {
        std::cout << payload;
    }
}

std::string ideal_lines(const std::vector<std::string>& gens) {
    if (gens.empty()) return "  (0)\n";
    std::string s;
    for (const auto& g : gens) s += "  " + g + "\n";
    return s;
}

std::string report_text(const SheafReport& r, const std::string& title) {
    std::string s = title + "\n";
    s += "  module_zero: " + std::string(r.module_zero ? "true" : "false") + "\n";
    s += "  sheaf_zero: " + std::string(r.sheaf_zero ? "true" : "false") + "\n";
    s += "  support_ideal:\n";
    for (const auto& g : r.support_ideal) s += "    " + g + "\n";
    if (r.support_ideal.empty()) s += "    (0)\n";
    s += "  locally_free_rank: " +
         (r.locally_free_rank ? std::to_string(*r.locally_free_rank) : std::string("none")) +
         "\n";
    if (r.fingerprint) {
        s += "  hilbert:";
        for (const auto& [d, v] : r.fingerprint->hilbert)
            s += " " + std::to_string(d) + ":" + std::to_string(v);
        s += "\n  fitting:";
        for (const auto& sig : r.fingerprint->fitting_signatures) s += " " + sig;
        s += "\n";
    }
    return s;
}

GroupPtr resolve_group(const CommonOpts& opts) {
    if (opts.group.empty()) throw InputError("--group is required");
    std::optional<std::uint32_t> p;
    if (opts.p) p = opts.p;
    return load_group(opts.group, p);
}

int cmd_compute(const std::string& kind, const CommonOpts& opts) {
    GroupPtr g = resolve_group(opts);
    Representation m = parse_module_expr(opts.module, g);
    GradedMatrix theta = assemble_theta(m);
    const std::uint32_t p = g->p;

    if (kind == "theta") {
        GradedMatrix tj = theta_power(theta, opts.j, ThetaSide::KerSide, p);
        json jm;
        jm["rows"] = tj.rows();
        jm["row_degrees"] = tj.row_degrees;
        jm["col_degrees"] = tj.col_degrees;
        json ent = json::array();
        std::string txt = "theta^" + std::to_string(opts.j) + " (" + std::to_string(tj.rows()) +
                          "x" + std::to_string(tj.cols()) + ")\n";
        for (std::size_t a = 0; a < tj.rows(); ++a) {
            json row = json::array();
            txt += "  [";
            for (std::size_t b = 0; b < tj.cols(); ++b) {
                row.push_back(tj.at(a, b).to_string());
                txt += (b ? ", " : "") + tj.at(a, b).to_string();
            }
            ent.push_back(std::move(row));
            txt += "]\n";
        }
        jm["entries"] = std::move(ent);
        emit(opts, jm, txt);
        return 0;
    }

    if (kind == "h" || kind == "f") {
        SubquotientSheaf s = (kind == "h") ? h_sheaf(theta, opts.i, p)
                                           : f_sheaf(theta, opts.i, p);
        SheafReport rep = sheaf_report(s, p, true, true);
        std::string name = (kind == "h" ? "H^(" : "F_") + std::to_string(opts.i) +
                           (kind == "h" ? ")" : "");
        emit(opts, report_to_json(rep), report_text(rep, name));
        return 0;
    }
    if (kind == "support") {
        SubquotientSheaf s = h_sheaf(theta, opts.i, p);
        SheafReport rep = sheaf_report(s, p, true, false);
        emit(opts, report_to_json(rep),
             "support of H^(" + std::to_string(opts.i) + ")\n" + ideal_lines(rep.support_ideal));
        return 0;
    }
    if (kind == "ker" || kind == "im" || kind == "coker") {
        KerImCoker kic = ker_im_coker(theta, opts.j, p);
        if (kind == "coker") {
            SheafReport rep = sheaf_report(kic.coker, p, true, true);
            emit(opts, report_to_json(rep),
                 report_text(rep, "coker^" + std::to_string(opts.j)));
            return 0;
        }
        const Submodule& sub = (kind == "ker") ? kic.ker : kic.im;
        GroebnerBasis gb = groebner_basis(theta.pres, sub);
        json jm;
        json gens = json::array();
        std::string txt = kind + "^" + std::to_string(opts.j) + " generators:\n";
        for (const auto& e : gb.elements()) {
            json v = json::array();
            std::string line = "  (";
            for (std::size_t c = 0; c < e.size(); ++c) {
                v.push_back(e[c].to_string());
                line += (c ? ", " : "") + e[c].to_string();
            }
            gens.push_back(std::move(v));
            txt += line + ")\n";
        }
        jm["generators"] = std::move(gens);
        emit(opts, jm, txt);
        return 0;
    }
    throw InputError("unknown compute kind '" + kind + "'");
}

int cmd_jtype(const CommonOpts& opts) {
    GroupPtr g = resolve_group(opts);
    Representation m = parse_module_expr(opts.module, g);
    std::vector<NullconePoint> pts;
    if (!opts.point.empty()) {
        pts.push_back(parse_point(*g, opts.point));
    } else if (opts.sample > 0) {
        pts = sample_points(*g, opts.sample, opts.seed);
    } else {
        throw InputError("jtype needs --point or --sample");
    }
    json reports = json::array();
    std::string txt;
    for (const auto& v : pts) {
        LocalJordanReport r = jordan_type_at(m, v);
        reports.push_back(jordan_report_to_json(r));
        txt += "point (";
        for (std::size_t c = 0; c < v.coords.size(); ++c)
            txt += (c ? "," : "") + std::to_string(v.coords[c].value);
        txt += "): " + r.jordan_type.to_string() +
               (r.projective ? "  projective" : "") + "\n";
    }
    auto common = constant_jt_check(m, pts);
    json out;
    out["reports"] = std::move(reports);
    out["constant"] = common ? json(common->to_string()) : json(nullptr);
    txt += common ? "constant Jordan type: " + common->to_string() + "\n"
                  : "Jordan type is not constant on the sample\n";
    emit(opts, out, txt);
    return 0;
}

struct Verifier {
    json checks = json::array();
    std::string txt;
    bool all_ok = true;

    void add(const std::string& name, bool ok) {
        checks.push_back({{"check", name}, {"pass", ok}});
        txt += std::string(ok ? "PASS  " : "FAIL  ") + name + "\n";
        all_ok &= ok;
    }
};

void verify_fig1(Verifier& v) {
    auto sl3 = make_sl3(3);
    Representation m = builtin_module("sl3_standard", sl3);

    SubquotientSheaf h = h_sheaf(assemble_theta(m), 1, 3);
    v.add("o5: H(M) = 0 (module and sheaf level)", is_module_zero(h) && is_sheaf_zero(h));

    SubquotientSheaf hd = h_sheaf(assemble_theta(dual(m)), 1, 3);
    v.add("o7: H(M*) = 0 (module and sheaf level)", is_module_zero(hd) && is_sheaf_zero(hd));

    const RingPtr& r = sl3->presentation.ring;
    std::vector<Polynomial> o9;
    for (const auto& s :
         {"x3*y3 + h7*h8", "x2*y3 + y1*h8", "x1*y3 - y2*h7", "y1*y2 + y3*h7 - y3*h8",
          "x3*y2 + x1*h8", "x2*y2 - h7*h8 + h8^2", "x3*y1 - x2*h7", "x1*x2 + x3*h7 - x3*h8"})
        o9.push_back(parse_polynomial(r, s));
    SubquotientSheaf ht = h_sheaf(assemble_theta(tensor(m, dual(m))), 1, 3);
    bool nonzero = !is_sheaf_zero(ht);
    auto ann = support_ideal(ht);
    bool radeq = true;
    for (const auto& gp : ann)
        if (!radical_membership(sl3->presentation, gp, o9)) radeq = false;
    for (const auto& gp : o9)
        if (!radical_membership(sl3->presentation, gp, ann)) radeq = false;
    v.add("o9: supp H(M ox M*) nonzero and radical-equal to the session ideal",
          nonzero && radeq);
}

void verify_sl2_regular(Verifier& v, std::uint32_t p, std::uint64_t seed) {
    auto sl2 = make_sl2(p);
    auto sample = sample_points(*sl2, 30, seed);
    for (std::uint32_t lam = 0; lam < p; ++lam) {
        Representation l = builtin_module("sl2_simple(" + std::to_string(lam) + ")", sl2);
        bool hzero = is_sheaf_zero(h_sheaf(assemble_theta(l), 1, p));
        bool proj_pts = true;
        for (const auto& pt : sample)
            if (!is_projective_at(l, pt)) proj_pts = false;
        bool expected = (lam == p - 1);
        v.add("L(" + std::to_string(lam) + "): H = 0 iff Steinberg, matches points",
              hzero == expected && proj_pts == expected && hzero == proj_pts);
    }
}

void verify_bgg_values(Verifier& v, std::uint32_t p, std::uint32_t n) {
    if (p != 2) throw InputError("bgg-values is a characteristic-2 bundle (--p 2)");
    auto ea = make_elem_abelian(n, 2);
    Representation k = builtin_module("trivial", ea);
    SubquotientSheaf hk = h_sheaf(assemble_theta(k), 1, 2);
    Fingerprint fk = fingerprint(hk, 2);
    auto binom = [&](std::int64_t d) -> std::int64_t {
        if (d < 0) return 0;
        std::int64_t num = 1, den = 1;
        for (std::uint32_t t = 1; t < n; ++t) {
            num *= d + t;
            den *= t;
        }
        return num / den;
    };
    bool ok = true;
    for (std::int64_t d = fk.window_lo; d <= fk.window_hi; ++d)
        if (*fk.value_at(d) != binom(d)) ok = false;
    v.add("H(k) has the structure-sheaf Hilbert values", ok && !is_sheaf_zero(hk));

    Representation ok_rep = heller(k);
    SubquotientSheaf ho = h_sheaf(assemble_theta(ok_rep), 1, 2);
    Fingerprint fo = fingerprint(ho, 2);
    bool ok2 = true;
    for (std::int64_t d = fo.window_lo; d <= fo.window_hi; ++d)
        if (*fo.value_at(d) != binom(d - 1)) ok2 = false;
    v.add("H(Omega k) has the twist(-1) Hilbert values", ok2);
    v.add("H(Omega k) matches the twisted structure fingerprint",
          fingerprint_matches(fo, fk, -1));
}

void verify_fomega(Verifier& v, std::uint32_t p) {
    auto ea = make_elem_abelian(2, p);
    Representation k = builtin_module("trivial", ea);
    Representation om = heller(k);
    std::vector<std::pair<std::string, Representation>> fixtures{{"k", k}, {"Omega(k)", om}};
    for (auto& [name, M] : fixtures) {
        GradedMatrix tm = assemble_theta(M);
        Representation oM = heller(M);
        GradedMatrix to = assemble_theta(oM);
        for (std::uint32_t i = 1; i < p; ++i) {
            Fingerprint a = fingerprint(f_sheaf(tm, i, p), p);
            Fingerprint b = fingerprint(f_sheaf(to, p - i, p), p);
            std::int64_t twist = static_cast<std::int64_t>(p - i) * ea->theta_degree();
            v.add("F_" + std::to_string(i) + "(" + name + ") ~ F_" + std::to_string(p - i) +
                      "(Omega " + name + ") twisted",
                  fingerprint_matches(a, b, twist));
        }
    }
}

void verify_thick(Verifier& v, const std::string& group_spec, std::uint32_t p) {
    GroupPtr g = load_group(group_spec.empty() ? "ea(2)" : group_spec, p);
    if (!g->is_unipotent_algebra())
        throw InputError("thick bundle needs a unipotent family (ea/ga)");
    Representation kg = builtin_module("regular", g);
    Representation k = builtin_module("trivial", g);
    auto hzero = [&](const Representation& m) {
        if (m.dim == 0) return true;
        return is_sheaf_zero(h_sheaf(assemble_theta(m), 1, g->p));
    };
    v.add("H(kG) = 0", hzero(kg));
    v.add("sum closure: H(kG + kG) = 0", hzero(direct_sum(kg, kg)));
    v.add("shift closure: H(Omega(kG + kG)) = 0", hzero(heller(direct_sum(kg, kg))));
    v.add("2-of-3: quotient of kG in kG + kG stays in the kernel", hzero(kg));
    v.add("non-membership: H(k) != 0", !hzero(k));
    v.add("summand witness: H(k + kG) != 0", !hzero(direct_sum(k, kg)));
    v.add("shift reflects: H(Omega k) != 0", !hzero(heller(k)));
}

int cmd_verify(const std::string& which, const CommonOpts& opts) {
    Verifier v;
    if (which == "fig1") {
        verify_fig1(v);
    } else if (which == "sl2-regular") {
        verify_sl2_regular(v, opts.p ? opts.p : 3, opts.seed);
    } else if (which == "bgg-values") {
        verify_bgg_values(v, opts.p ? opts.p : 2, opts.r ? opts.r : 2);
    } else if (which == "fomega") {
        verify_fomega(v, opts.p ? opts.p : 3);
    } else if (which == "thick") {
        verify_thick(v, opts.group, opts.p ? opts.p : 3);
    } else {
        throw InputError("unknown verification bundle '" + which + "'");
    }
    json out;
    out["checks"] = v.checks;
    out["pass"] = v.all_ok;
    emit(opts, out, v.txt + (v.all_ok ? "all checks passed\n" : "SOME CHECKS FAILED\n"));
    return v.all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational algebra for sheaves attached to modular representations"};
    app.require_subcommand(1);
    CommonOpts opts;

    auto add_common = [&](CLI::App* sub, bool needs_module) {
        sub->add_option("--group", opts.group, "builtin name or group JSON file");
        if (needs_module)
            sub->add_option("--module", opts.module,
                            "module expression or JSON file (tensor/dual/sum/omega)");
        sub->add_option("--p", opts.p, "field characteristic for builtin groups");
        sub->add_option("--i", opts.i, "sheaf index (H: 1..p-1, F: 1..p)");
        sub->add_option("--j", opts.j, "operator power (ker/im/coker/theta)");
        sub->add_option("--r", opts.r, "rank parameter for verification bundles");
        sub->add_option("--point", opts.point, "comma list or name=value pairs");
        sub->add_option("--sample", opts.sample, "number of sampled points");
        sub->add_option("--seed", opts.seed, "sampler seed (default 0)");
        sub->add_option("--format", opts.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", opts.out, "write the report to a file");
    };

    std::string kind, which;
    CLI::App* compute = app.add_subcommand("compute", "compute sheaves and reports");
    compute->add_option("kind", kind, "h|f|ker|im|coker|support|theta")->required();
    add_common(compute, true);

    CLI::App* jtype = app.add_subcommand("jtype", "local Jordan types");
    add_common(jtype, true);

    CLI::App* verify = app.add_subcommand("verify", "verification bundles");
    verify->add_option("which", which, "fig1|sl2-regular|bgg-values|fomega|thick")->required();
    add_common(verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (compute->parsed()) return cmd_compute(kind, opts);
        if (jtype->parsed()) return cmd_jtype(opts);
        if (verify->parsed()) return cmd_verify(which, opts);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        std::cerr << "precondition violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
