#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symplectic/symplectic.hpp"

namespace sj = symplectic::json;
using namespace symplectic;

namespace {

enum Exit { kOk = 0, kError = 1, kNotApplicable = 2 };

struct Globals {
    std::string format = "json";
    std::string fixtures = kDefaultFixturesPath;
    int jobs = 1;
};

// Curve payload: a JSON array, or a fixture label.
WeierstrassModel resolve_curve(const std::string& arg, const Globals& g) {
    if (!arg.empty() && arg.front() == '[') return parse_model(arg);
    return fixture(load_fixtures(g.fixtures), arg);
}

std::string kv(const std::string& key, const std::string& value) {
    std::ostringstream os;
    os << std::left << std::setw(26) << key << value << '\n';
    return os.str();
}

std::string bool_str(bool b) { return b ? "yes" : "no"; }

std::string valuation_str(int v) { return v == kInfinity ? "inf" : std::to_string(v); }

std::string local_text(const LocalInvariants& L) {
    std::string out;
    out += kv("  kodaira", L.kodaira.str());
    out += kv("  (v(c4), v(c6), v(disc))",
              "(" + valuation_str(L.v_c4) + ", " + valuation_str(L.v_c6) + ", " + std::to_string(L.v_disc) + ")");
    out += kv("  conductor exponent", std::to_string(L.conductor_exponent));
    out += kv("  tamagawa", std::to_string(L.tamagawa));
    return out;
}

struct Output {
    sj::json body;
    std::string text;
    int code = kOk;
};

Output cmd_invariants(const WeierstrassModel& E) {
    Output o;
    const auto s = standard_invariants(E);
    const auto g = global_reduction(E);
    sj::json locals = sj::json::array();
    for (long l : g.bad_primes) locals.push_back(sj::of(minimal_model_at(E, l).inv));
    o.body = {{"model", sj::of(E)},
              {"b2", sj::integer(s.b2)},
              {"b4", sj::integer(s.b4)},
              {"b6", sj::integer(s.b6)},
              {"b8", sj::integer(s.b8)},
              {"c4", sj::integer(s.c4)},
              {"c6", sj::integer(s.c6)},
              {"disc", sj::integer(s.disc)},
              {"conductor", sj::integer(g.conductor)},
              {"bad_primes", g.bad_primes},
              {"local", locals}};
    o.text += kv("model", to_string(E));
    o.text += kv("c4", s.c4.get_str());
    o.text += kv("c6", s.c6.get_str());
    o.text += kv("disc", s.disc.get_str());
    o.text += kv("conductor", g.conductor.get_str());
    for (long l : g.bad_primes) {
        o.text += kv("prime", std::to_string(l));
        o.text += local_text(minimal_model_at(E, l).inv);
    }
    return o;
}

Output cmd_classify(const WeierstrassModel& E, long ell) {
    Output o;
    const auto rc = classify(E, ell);
    o.body = sj::of(rc);
    o.text += kv("prime", std::to_string(ell));
    o.text += kv("reduction", to_string(rc.kind));
    o.text += kv("e", std::to_string(rc.e));
    o.text += kv("inertia", to_string(rc.inertia));
    o.text += kv("row", rc.row ? rc.row->name : "-");
    o.text += kv("reducing twist", std::to_string(rc.reducing_twist));
    o.text += kv("minimal model", to_string(rc.local.minimal));
    o.text += local_text(rc.local.inv);
    return o;
}

// Text layout follows the criteria summary: reduction type, prime, condition, criterion, then the verdict.
Output cmd_compare(const WeierstrassModel& E, const WeierstrassModel& Ep, long p, const CompareOptions& opt) {
    Output o;
    const auto rep = compare(E, Ep, p, opt);
    o.body = sj::of(rep);
    std::ostringstream os;
    os << std::left << std::setw(48) << "reduction" << std::setw(7) << "prime" << std::setw(11) << "criterion"
       << std::setw(6) << "r" << std::setw(6) << "t" << std::setw(17) << "outcome"
       << "reason\n";
    for (const auto& pv : rep.primes) {
        const auto& v = pv.verdict;
        os << std::setw(48) << (pv.kind + " / " + pv.kind_prime) << std::setw(7) << pv.ell << std::setw(11)
           << (pv.criterion.empty() ? "-" : pv.criterion) << std::setw(6)
           << (v.witness ? std::to_string(v.witness->r) : "-") << std::setw(6)
           << (v.witness ? std::to_string(v.witness->t) : "-") << std::setw(17) << to_string(v.outcome) << v.reason
           << '\n';
    }
    os << "consensus: " << (rep.inconsistent ? "inconsistent" : to_string(rep.consensus)) << '\n';
    o.text = os.str();
    o.code = (!rep.inconsistent && is_determined(rep.consensus)) ? kOk : kNotApplicable;
    return o;
}

Output cmd_hilbert(long D) {
    Output o;
    const auto r = hilbert_class_poly_checked(D);
    sj::json coeffs = sj::json::array();
    for (const auto& c : r.coeffs) coeffs.push_back(sj::integer(c));
    const auto poly = poly_to_string(r.coeffs);
    o.body = {{"D", D}, {"coefficients", coeffs}, {"polynomial", poly}, {"degree", r.coeffs.size() - 1}};
    o.text = poly + '\n';
    return o;
}

Output cmd_frobenius(const WeierstrassModel& E, long ell, long p) {
    Output o;
    const auto fd = frobenius_data(E, ell);
    const auto m = frob_matrix(fd, p);
    o.body = sj::of(fd);
    o.body["p"] = p;
    o.body["matrix"] = sj::of(m);
    o.body["order_condition"] = frob_order_condition(fd, p);
    o.text += kv("a_ell", std::to_string(fd.a));
    o.text += kv("disc", std::to_string(fd.disc));
    o.text += kv("beta", std::to_string(fd.beta));
    o.text += kv("j mod ell", std::to_string(fd.j));
    o.text += kv("matrix mod p", to_string(m));
    return o;
}

Output cmd_oracle(const WeierstrassModel& E, const WeierstrassModel& Ep, long ell, long p) {
    Output o;
    const auto t = oracle_symplectic_type(E, Ep, ell, p);
    o.body = sj::of(t);
    o.body["ell"] = ell;
    o.body["p"] = p;
    o.text += kv("frob", to_string(t.frob));
    o.text += kv("frob'", to_string(t.frob_prime));
    o.text += kv("types", to_string(t));
    o.code = (t.symplectic || t.antisymplectic) ? kOk : kNotApplicable;
    return o;
}

Output cmd_frey_scan(const WeierstrassModel& W, long ell, long p, int jobs) {
    Output o;
    const auto r = scan_residual_pairs(W, ell, p, jobs);
    o.body = sj::of(r);
    o.text += kv("W frobenius", to_string(r.w_frob) + "  (a = " + std::to_string(r.a_w) + ")");
    o.text += kv("level lowering", bool_str(r.level_lowering_possible));
    o.text += kv("order condition", bool_str(r.w_order_condition));
    o.text += kv("non-residue", std::to_string(r.nonresidue));
    o.text += kv("cells", std::to_string(r.cells));
    for (const auto& m : r.matches)
        o.text += kv("match", "d=" + std::to_string(m.d) + " (a,b)=(" + std::to_string(m.a) + "," +
                                   std::to_string(m.b) + ") " + to_string(m.frob) +
                                   (m.isomorphic_to_w ? " isomorphic" : ""));
    o.text += kv("verdict", to_string(r.verdict));
    o.text += kv("reason", r.reason);
    return o;
}

Output cmd_hyper(long ell, HyperVariant v) {
    Output o;
    const auto h = hyperelliptic_parity_argument(ell, v);
    o.body = sj::of(h);
    for (const auto& c : h.comparisons)
        o.text += kv(c.frey + " vs " + c.label, c.criterion_2 + " at 2, " + c.criterion_ell + " at " +
                                                    std::to_string(ell));
    o.text += kv("conclusion", h.conclusion);
    return o;
}

Output cmd_exists(const std::string& gens_text, long p) {
    Output o;
    sj::json j;
    try {
        j = sj::json::parse(gens_text);
    } catch (const sj::json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("generators are not valid JSON: ") + e.what());
    }
    require(j.is_array(), ErrorCode::InvalidArgument, "generators must be a list of 2x2 matrices");
    std::vector<Mat2> gens;
    for (const auto& m : j) {
        require(m.is_array() && m.size() == 2 && m[0].is_array() && m[1].is_array() && m[0].size() == 2 &&
                    m[1].size() == 2,
                ErrorCode::InvalidArgument, "matrix must be [[a,b],[c,d]]: " + m.dump());
        gens.push_back(mat_reduce(m[0][0].get<long>(), m[0][1].get<long>(), m[1][0].get<long>(),
                                  m[1][1].get<long>(), p));
    }
    const auto r = criterion_exists(gens, p);
    o.body = sj::of(r);
    o.body["p"] = p;
    o.text += kv("exists", bool_str(r.exists));
    o.text += kv("pattern", to_string(r.pattern));
    o.text += kv("subgroup order", std::to_string(r.subgroup_order));
    o.text += kv("centralizer order", std::to_string(r.centralizer_order));
    return o;
}

HyperVariant parse_variant(const std::string& s) {
    if (s == "1" || s == "ell" || s == "l" || s == "x^p-l") return HyperVariant::Ell;
    if (s == "2" || s == "2ell" || s == "2l" || s == "x^p-2l") return HyperVariant::TwoEll;
    fail(ErrorCode::InvalidArgument, "variant must be 1 (x^p - l) or 2 (x^p - 2l), got " + s);
}

long to_long(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorCode::InvalidArgument, std::string(what) + " must be an integer, got " + s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symplectic type of p-torsion isomorphisms between elliptic curves over Q"};
    app.require_subcommand(1, 1);
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--fixtures", g.fixtures, "Fixture file (label -> [a1..a6])");
    app.add_option("--jobs", g.jobs, "Worker threads for per-prime and scan parallelism")->check(CLI::Range(1, 256));

    std::string curve, curve1, curve2, gens;
    long p = 0, ell = 0, good_bound = 0;
    bool no_same_field = false;
    std::vector<std::string> pos;

    auto* inv = app.add_subcommand("invariants", "Standard invariants, conductor and local data");
    inv->add_option("--curve", curve, "JSON array or fixture label")->required();

    auto* cls = app.add_subcommand("classify", "Reduction type and semistability defect at one prime");
    cls->add_option("--curve", curve, "JSON array or fixture label")->required();
    cls->add_option("-l,--ell", ell, "Prime")->required();

    auto* cmp = app.add_subcommand("compare", "Run every applicable local criterion");
    cmp->add_option("--curve1", curve1, "E")->required();
    cmp->add_option("--curve2", curve2, "E'")->required();
    cmp->add_option("-p", p, "Torsion prime")->required();
    cmp->add_option("--good-bound", good_bound, "Also try good primes up to this bound");
    cmp->add_flag("--no-same-inertial-field", no_same_field, "Do not assume equal inertial fields at 2 for e = 24");

    auto* hil = app.add_subcommand("hilbert", "Class polynomial of discriminant D");
    hil->add_option("D", pos, "Negative discriminant")->required()->expected(1);

    auto* fro = app.add_subcommand("frobenius", "a_ell, disc, beta and the Frobenius matrix mod p");
    fro->add_option("--curve", curve, "JSON array or fixture label")->required();
    fro->add_option("-l,--ell", ell, "Good prime")->required();
    fro->add_option("-p", p, "Torsion prime")->required();

    auto* ora = app.add_subcommand("oracle", "Brute-force symplectic types over a finite field");
    ora->add_option("--curve1", curve1, "E")->required();
    ora->add_option("--curve2", curve2, "E'")->required();
    ora->add_option("-l,--ell", ell, "Common good prime")->required();
    ora->add_option("-p", p, "Torsion prime")->required();

    auto* scan = app.add_subcommand("frey-scan", "Residual Frey pair scan for x^2 + y^3 = z^p");
    scan->add_option("args", pos, "p W ell (positional alternative)")->expected(0, 3);
    scan->add_option("-p", p, "Exponent");
    scan->add_option("--curve,-W", curve, "Curve W (JSON array or fixture label)");
    scan->add_option("-l,--ell", ell, "Auxiliary prime");

    auto* hyp = app.add_subcommand("hyper", "Parity argument for y^2 = x^p - l and y^2 = x^p - 2l");
    hyp->add_option("args", pos, "ell variant")->required()->expected(1, 2);

    auto* ex = app.add_subcommand("exists", "Whether a local criterion can exist for an image group");
    ex->add_option("--gens", gens, "JSON list of 2x2 matrices")->required();
    ex->add_option("-p", p, "Odd prime")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kError;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    const bool text = g.format == "text";
    try {
        Output o;
        if (name == "invariants") {
            o = cmd_invariants(resolve_curve(curve, g));
        } else if (name == "classify") {
            o = cmd_classify(resolve_curve(curve, g), ell);
        } else if (name == "compare") {
            CompareOptions opt;
            opt.good_bound = good_bound;
            opt.same_inertial_field = !no_same_field;
            opt.jobs = g.jobs;
            o = cmd_compare(resolve_curve(curve1, g), resolve_curve(curve2, g), p, opt);
        } else if (name == "hilbert") {
            o = cmd_hilbert(to_long(pos.at(0), "D"));
        } else if (name == "frobenius") {
            o = cmd_frobenius(resolve_curve(curve, g), ell, p);
        } else if (name == "oracle") {
            o = cmd_oracle(resolve_curve(curve1, g), resolve_curve(curve2, g), ell, p);
        } else if (name == "frey-scan") {
            if (pos.size() == 3) {
                p = to_long(pos[0], "p");
                curve = pos[1];
                ell = to_long(pos[2], "ell");
            }
            require(pos.empty() || pos.size() == 3, ErrorCode::InvalidArgument, "frey-scan takes p W ell");
            require(p != 0 && ell != 0 && !curve.empty(), ErrorCode::InvalidArgument,
                    "frey-scan needs p, W and ell");
            o = cmd_frey_scan(resolve_curve(curve, g), ell, p, g.jobs);
        } else if (name == "hyper") {
            o = cmd_hyper(to_long(pos.at(0), "ell"), parse_variant(pos.size() > 1 ? pos[1] : "1"));
        } else if (name == "exists") {
            o = cmd_exists(gens, p);
        }
        if (text) std::cout << o.text;
        else std::cout << sj::envelope(name, o.body).dump(2) << '\n';
        return o.code;
    } catch (const Error& e) {
        std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << '\n';
        if (!text) std::cout << sj::error_envelope(name, e.code(), e.what()).dump(2) << '\n';
        return kError;
    }
}
