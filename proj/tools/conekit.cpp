#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conekit/scenarios.hpp"

using namespace conekit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* yes_no(bool b) { return b ? "true" : "false"; }

std::string class_str(const IntersectionLattice& lattice, const ClassVector& v) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Rat& c = v[i];
        if (c.is_zero()) {
            continue;
        }
        const std::string& name = lattice.basis_names()[i];
        if (first) {
            os << (c.sign() < 0 ? "-" : "");
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        if (c.abs() != Rat(1)) {
            os << c.abs() << ' ';
        }
        os << name;
        first = false;
    }
    return first ? "0" : os.str();
}

std::string join(const std::vector<Rat>& xs, const char* sep = " ") {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        out += (k ? sep : "") + xs[k].str();
    }
    return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            if constexpr (std::is_same_v<T, int>) {
                std::size_t pos = 0;
                const int v = std::stoi(item, &pos);
                if (pos != item.size()) {
                    throw std::invalid_argument(item);
                }
                out.push_back(v);
            } else {
                out.push_back(Rat::parse(item));
            }
        } catch (const std::exception&) {
            throw UsageError(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    return out;
}

int subtract_index(const std::string& text) {
    const NamedDivisor d = parse_divisor(text);
    if (d.terms().size() != 1 || d.terms().begin()->second != Rat(1) || d.terms().begin()->first.rfind("E_", 0) != 0) {
        throw UsageError("--subtract expects a single curve E_j, got '" + text + "'");
    }
    return std::stoi(d.terms().begin()->first.substr(2));
}

Report km_surface_report(int d, bool check) {
    const KMSurface s = build_km_surface(d);
    Report rep;
    rep.scenario = "km-surface";
    rep.params = {{"d", d}};
    Table reg{"registry", {"name", "class", "self_intersection", "prime"}, {}};
    for (const auto& e : s.registry().entries()) {
        reg.rows.push_back({e.name, class_str(s.lattice(), e.cls), intersect(s.lattice(), e.cls, e.cls).str(),
                            yes_no(e.is_prime)});
    }
    rep.tables.push_back(std::move(reg));
    rep.verdict = "built";
    if (check) {
        const SanityReport sanity = km_sanity(s);
        Table t{"sanity", {"check", "pass", "detail"}, {}};
        for (const auto& item : sanity.items) {
            t.rows.push_back({item.label, yes_no(item.pass), item.detail});
        }
        rep.tables.push_back(std::move(t));
        rep.verdict = std::string("sanity=") + (sanity.all_pass() ? "pass" : "fail");
        rep.ok = sanity.all_pass();
    }
    return rep;
}

struct ContractArgs {
    int d = 5;
    std::optional<std::string> pullback;
    bool discrepancies = false;
    bool classify = false;
    std::string boundary = "0";
    std::vector<std::string> target_intersect;
};

Report contract_report(const ContractArgs& a) {
    const KmTarget t(a.d);
    const Contraction& psi = t.psi();
    Report rep;
    rep.scenario = "contract";
    rep.params = {{"d", a.d}};
    std::vector<std::string> done;
    if (a.pullback) {
        const NamedDivisor target = parse_divisor(*a.pullback);
        const NamedDivisor pulled = psi.pullback(target);
        rep.params["pullback"] = target.str();
        Table tab{"pullback", {"curve", "coefficient"}, {}};
        for (const auto& [name, c] : pulled.terms()) {
            tab.rows.push_back({name, c.str()});
        }
        rep.tables.push_back(std::move(tab));
        rep.certificates.push_back({"pullback", pulled.str(), "orthogonal-extension",
                                    "unique extension orthogonal to every contracted curve"});
        done.push_back("pullback");
    }
    if (a.discrepancies) {
        const DiscrepancyTable table = psi.relative_canonical();
        Table tab{"discrepancies", {"curve", "a"}, {}};
        for (const auto& [name, v] : table.entries) {
            tab.rows.push_back({name, v.str()});
        }
        rep.tables.push_back(std::move(tab));
        rep.certificates.push_back({"min discrepancy", table.min().str(), "relative-canonical",
                                    "K_S = psi*K_T + sum a_C C"});
        done.push_back("discrepancies");
    }
    if (a.classify) {
        const NamedDivisor boundary = parse_divisor(a.boundary);
        rep.params["boundary"] = boundary.str();
        const SingularityClassification cls = psi.classify_singularities(boundary);
        Table tab{"pair discrepancies", {"curve", "a"}, {}};
        for (const auto& [name, v] : cls.discrepancies.entries) {
            tab.rows.push_back({name, v.str()});
        }
        rep.tables.push_back(std::move(tab));
        rep.certificates.push_back({"classification", to_string(cls.kind), cls.certificate,
                                    "discrepancy thresholds of the exceptional curves"});
        if (cls.min_discrepancy) {
            rep.certificates.push_back({"min pair discrepancy", cls.min_discrepancy->str(), cls.certificate,
                                        "a_C minus the coefficient of C in the pulled-back boundary"});
        }
        done.push_back(std::string("classification=") + to_string(cls.kind));
    }
    if (!a.target_intersect.empty()) {
        const NamedDivisor x = parse_divisor(a.target_intersect.at(0));
        const NamedDivisor y = parse_divisor(a.target_intersect.at(1));
        rep.certificates.push_back({"(" + x.str() + ").(" + y.str() + ")", psi.target_intersect(x, y).str(),
                                    "pullback-intersection", "computed on the source after pulling back"});
        done.push_back("target-intersect");
    }
    if (done.empty()) {
        throw UsageError("contract: give at least one of --pullback, --discrepancies, --classify, --target-intersect");
    }
    for (const auto& s : done) {
        rep.verdict += (rep.verdict.empty() ? "" : " ") + s;
    }
    return rep;
}

Report cohom_report(int d, int q1, int q2, std::optional<int> n, const std::optional<std::string>& subtract) {
    const KmTarget t(d);
    const FamilyDescriptor fam{d, q1, q2};
    fam.validate();
    std::optional<int> j;
    if (subtract) {
        if (!n) {
            throw UsageError("--subtract requires --n");
        }
        j = subtract_index(*subtract);
    }
    const CohomReport c = n ? cohomology_of_nA(t, fam, *n, j) : km_family_cohomology(t, fam);

    Report rep;
    rep.scenario = "cohom";
    rep.params = {{"d", d}, {"q1", q1}, {"q2", q2}};
    std::string divisor = "A";
    if (n) {
        rep.params["n"] = *n;
        divisor = std::to_string(*n) + "A";
    }
    if (j) {
        rep.params["subtract"] = curve::E(*j);
        divisor += "-" + curve::E(*j);
    }
    rep.params["A"] = fam.divisor().str();
    const auto row = [&](const char* entry, const std::string& value) {
        rep.certificates.push_back({std::string(entry) + "(T," + divisor + ")", value, joined_rules(c, entry),
                                    "Riemann-Roch through the floor of the pullback, duality and vanishing rules"});
    };
    row("h0", c.h0.str());
    row("h1", c.h1.str());
    row("h2", c.h2.str());
    row("chi", std::to_string(c.chi));
    rep.verdict = std::string("consistent=") + yes_no(c.consistent());
    rep.ok = c.consistent();
    return rep;
}

struct ConeArgs {
    std::optional<int> d;
    int q = 3;
    std::string family = "plt";
    std::optional<std::string> a;
    std::string ledger = "all";
};

Report cone_report(const ConeArgs& args) {
    int d = 0;
    NamedDivisor a;
    if (args.family == "plt") {
        if (!args.d) {
            throw UsageError("cone --family plt requires --d");
        }
        d = *args.d;
        if (args.q + 1 > d || args.q < 1) {
            throw UsageError("cone: need 1 <= q and q+1 <= d");
        }
        a = FamilyDescriptor{d, args.q, 1}.divisor();
    } else if (args.family == "fano") {
        d = 4 * args.q + 2;
        if (args.d && *args.d != d) {
            throw UsageError("cone --family fano: d must be 4q+2 = " + std::to_string(d));
        }
        if (args.q < 1) {
            throw UsageError("cone --family fano: q must be at least 1");
        }
        a = FamilyDescriptor{d, 3 * args.q, args.q}.divisor();
    } else {
        throw UsageError("unknown family '" + args.family + "'");
    }
    if (args.a) {
        a = parse_divisor(*args.a);
    }
    const ConeModel cone = ConeModel::build(KmTarget(d), a);

    Report rep;
    rep.scenario = "cone";
    rep.params = {{"d", d}, {"q", args.q}, {"family", args.family}, {"A", a.str()}, {"ledger", args.ledger}};
    const bool all = args.ledger == "all";
    bool ok = true;

    if (all || args.ledger == "curve") {
        Table t{"curve", {"curve", "m", "C^2", "K_X.C", "S.C", "c_C"}, {}};
        const auto crepant = cone.crepant_pullback_fY();
        for (std::size_t k = 0; k < crepant.size(); ++k) {
            const CurveNumbers cn = cone.cone_curve_numbers(crepant[k].first);
            t.rows.push_back({cn.curve, std::to_string(cn.m), cn.self_intersection.str(), cn.canonical_dot_curve.str(),
                              cn.section_dot_curve.str(), crepant[k].second.str()});
        }
        rep.tables.push_back(std::move(t));
    }
    if (all || args.ledger == "sections") {
        Table t{"sections",
                {"i", "j", "psiA.E_j", "S+.E_j+", "S-.E_j-", "K_X.E_i+", "K_X.E_i-", "crepant", "crepant_printed",
                 "K_Y.f(E_i+)", "K_Y.f(E_i-)", "E_i^Y.f(E_j)", "consistent"},
                {}};
        for (int i = 1; i <= d; ++i) {
            for (int j = 1; j <= d; ++j) {
                const SectionNumbers s = cone.section_numbers(i, j);
                ok = ok && s.consistent;
                t.rows.push_back({std::to_string(i), std::to_string(j), s.psiA_dot_Ej.str(), s.s_plus_dot_Ej_plus.str(),
                                  s.s_minus_dot_Ej_minus.str(), s.canonical_dot_Ei_plus.str(),
                                  s.canonical_dot_Ei_minus.str(), s.crepant_term.str(), s.crepant_term_printed.str(),
                                  s.ky_dot_fEi_plus.str(), s.ky_dot_fEi_minus.str(), s.ey_i_dot_fEj.str(),
                                  yes_no(s.consistent)});
            }
        }
        rep.tables.push_back(std::move(t));
        const AdjunctionReport adj = cone.adjunction_consistency();
        Table at{"adjunction", {"check", "lhs", "rhs", "pass"}, {}};
        for (const auto& c : adj.checks) {
            at.rows.push_back({c.label, c.lhs.str(), c.rhs.str(), yes_no(c.pass)});
        }
        ok = ok && adj.all_pass();
        rep.tables.push_back(std::move(at));
    }
    if (all || args.ledger == "resolution") {
        Table t{"resolution",
                {"curve", "m", "F+ coefficient", "a(F+)", "mu*S+ on F+", "mu*S- on F_k-", "mu*R on F+", "mu*R on F_k-",
                 "dual graph"},
                {}};
        for (const auto& r : cone.resolution_ledger()) {
            t.rows.push_back({r.curve, std::to_string(r.m), r.fplus_coefficient.str(), r.fplus_discrepancy.str(),
                              r.s_plus_on_fplus.str(), join(r.s_minus_chain), r.r_on_fplus.str(), join(r.r_chain),
                              r.dual_graph});
        }
        rep.tables.push_back(std::move(t));
    }
    if (all || args.ledger == "picard") {
        const PicardChain p = cone.picard_chain();
        Table t{"picard", {"rho_S", "rho_T", "rho_X", "rho_Y", "rho_Z", "consistent"}, {}};
        t.rows.push_back({std::to_string(p.rho_S), std::to_string(p.rho_T), std::to_string(p.rho_X),
                          std::to_string(p.rho_Y), std::to_string(p.rho_Z), yes_no(p.consistent)});
        ok = ok && p.consistent;
        rep.tables.push_back(std::move(t));
    }
    if (rep.tables.empty()) {
        throw UsageError("unknown ledger '" + args.ledger + "'");
    }
    rep.verdict = std::string("consistent=") + yes_no(ok);
    rep.ok = ok;
    return rep;
}

Report kvv_report(const std::string& e_text, const std::string& delta_text, const std::string& target_text) {
    const auto e = parse_list<int>(e_text, "--e");
    const auto delta = parse_list<Rat>(delta_text, "--delta");
    Rat target;
    try {
        target = Rat::parse(target_text);
    } catch (const std::exception&) {
        throw UsageError("cannot parse --target '" + target_text + "'");
    }
    const auto trace = kvv_schedule(e, delta, target);
    Report rep;
    rep.scenario = "kvv-schedule";
    rep.params = {{"e", e_text}, {"delta", delta_text}, {"target", target.str()}};
    Table t{"steps", {"j", "mu", "chosen", "lambda", "delta"}, {}};
    bool in_range = true;
    for (const auto& s : trace) {
        for (const Rat& x : s.delta) {
            in_range = in_range && x.sign() >= 0 && x <= Rat(1);
        }
        t.rows.push_back({std::to_string(s.j), s.mu.str(), std::to_string(s.chosen), s.lambda.str(), join(s.delta)});
    }
    rep.tables.push_back(std::move(t));
    const Rat reached = trace.empty() ? Rat(0) : trace.back().lambda;
    rep.certificates.push_back({"steps", std::to_string(trace.size()), "argmin-lowest-index",
                                "mu_j = min (1 - delta_i)/e_i"});
    rep.certificates.push_back({"delta in [0,1]", yes_no(in_range), "trace-scan", "every recorded step"});
    rep.verdict = std::string("reached=") + yes_no(reached >= target) + " lambda=" + reached.str();
    rep.ok = in_range && reached >= target;
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conekit: exact intersection numbers for Keel-McKernan surfaces and cone constructions"};
    app.require_subcommand(1);
    app.fallthrough();
    std::optional<std::string> format_text;
    app.add_option("--format", format_text, "Output format: json, csv or md")
        ->check(CLI::IsMember({"json", "csv", "md"}));

    int d = 5;
    bool check = false;
    auto* km = app.add_subcommand("km-surface", "Registry of named curves on S and sanity checks");
    km->add_option("--d", d, "Number of points on the conic (d >= 3)")->required();
    km->add_flag("--check", check, "Run the lattice sanity checks");

    ContractArgs ca;
    auto* contract = app.add_subcommand("contract", "Pullbacks, discrepancies and pair classification for psi");
    contract->add_option("--d", ca.d, "Number of points on the conic")->required();
    contract->add_option("--pullback", ca.pullback, "Divisor on T, e.g. \"E_1^T\"");
    contract->add_flag("--discrepancies", ca.discrepancies, "Relative canonical discrepancies of psi");
    contract->add_flag("--classify", ca.classify, "Classify the pair (T, boundary)");
    contract->add_option("--boundary", ca.boundary, "Boundary on T for --classify");
    contract->add_option("--target-intersect", ca.target_intersect, "Two divisors on T")->expected(2);

    int q1 = 0;
    int q2 = 0;
    std::optional<int> n;
    std::optional<std::string> subtract;
    auto* cohom = app.add_subcommand("cohom", "Cohomology of A, nA or nA - E_j for the two-index family");
    cohom->add_option("--d", d)->required();
    cohom->add_option("--q1", q1)->required();
    cohom->add_option("--q2", q2)->required();
    cohom->add_option("--n", n, "Multiple of A");
    cohom->add_option("--subtract", subtract, "Fresh curve E_j to subtract");

    ConeArgs co;
    auto* cone = app.add_subcommand("cone", "Threefold ledger of the cone construction");
    cone->add_option("--d", co.d);
    cone->add_option("--q", co.q)->required();
    cone->add_option("--family", co.family)->check(CLI::IsMember({"plt", "fano"}));
    cone->add_option("--A", co.a, "Override the divisor A on T");
    cone->add_option("--ledger", co.ledger)->check(CLI::IsMember({"curve", "sections", "resolution", "picard", "all"}));

    std::string e_text;
    std::string delta_text;
    std::string target_text;
    auto* kvv = app.add_subcommand("kvv-schedule", "Coefficient-reduction schedule");
    kvv->add_option("--e", e_text, "Comma-separated positive multiplicities")->required();
    kvv->add_option("--delta", delta_text, "Comma-separated initial coefficients in [0,1)")->required();
    kvv->add_option("--target", target_text, "Target lambda")->required();

    int vq = 0;
    int vd = 0;
    int chain = 6;
    auto* verify = app.add_subcommand("verify", "End-to-end scenario verifiers");
    verify->require_subcommand(1);
    auto* vplt = verify->add_subcommand("plt", "Non-normal plt centre");
    vplt->add_option("--d", vd)->required();
    vplt->add_option("--q", vq)->required();
    vplt->add_option("--chain", chain, "Largest n listed explicitly in the cohomology chains");
    auto* vfano = verify->add_subcommand("fano", "Fano cone with H^2(Z, O_Z) = q - 1");
    vfano->add_option("--q", vq)->required();
    vfano->add_option("--chain", chain);

    int d_min = 3;
    int d_max = 12;
    std::optional<std::string> out_path;
    auto* sweep = app.add_subcommand("sweep", "Kawamata-Viehweg violation sweep");
    sweep->add_option("--d-min", d_min)->required();
    sweep->add_option("--d-max", d_max)->required();
    sweep->add_option("--out", out_path, "Write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Report rep;
        Format format = Format::Json;
        if (*km) {
            rep = km_surface_report(d, check);
        } else if (*contract) {
            rep = contract_report(ca);
        } else if (*cohom) {
            rep = cohom_report(d, q1, q2, n, subtract);
        } else if (*cone) {
            rep = cone_report(co);
        } else if (*kvv) {
            rep = kvv_report(e_text, delta_text, target_text);
        } else if (*vplt) {
            rep = to_report(verify_plt_nonnormal(vd, vq, chain));
        } else if (*vfano) {
            rep = to_report(verify_bad_fano(vq, chain));
        } else if (*sweep) {
            rep = sweep_report(d_min, d_max, sweep_kvv(d_min, d_max));
            format = Format::Csv;
        }
        if (format_text) {
            format = parse_format(*format_text);
        }
        const std::string text = render(rep, format);
        if (out_path) {
            std::ofstream f(*out_path, std::ios::binary);
            if (!f) {
                std::cerr << "conekit: cannot write '" << *out_path << "'\n";
                return kExitFailed;
            }
            f << text;
        } else {
            std::cout << text;
        }
        return rep.ok ? kExitOk : kExitFailed;
    } catch (const UsageError& e) {
        std::cerr << "conekit: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InternalInconsistency& e) {
        std::cerr << "conekit: internal inconsistency: " << e.what() << '\n';
        return kExitFailed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "conekit: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "conekit: " << e.what() << '\n';
        return kExitFailed;
    }
}
