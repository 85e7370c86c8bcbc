#include <folbound/cli.hpp>

#include <folbound/errors.hpp>
#include <folbound/indices.hpp>
#include <folbound/jets.hpp>
#include <folbound/theorems.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace folbound
{

namespace
{

const char *verdict(bool pass)
{
    return pass ? "pass" : "fail";
}

// Multiplicity sequences may differ only by trailing 1s.
bool same_up_to_ones(const std::vector<int> &a, const std::vector<int> &b)
{
    const std::size_t k = std::min(a.size(), b.size());
    if (!std::equal(a.begin(), a.begin() + static_cast<long>(k), b.begin())) {
        return false;
    }
    const auto &longer = a.size() > b.size() ? a : b;
    return std::all_of(longer.begin() + static_cast<long>(k), longer.end(), [](int m) { return m == 1; });
}

Json isolation_json(const WeakIsolationReport &w)
{
    Json att = Json::array();
    for (const auto &a : w.attachments) {
        att.push_back({{"branch", a.branch},
                       {"point", a.point},
                       {"component", a.component},
                       {"component_invariant", a.component_invariant},
                       {"kappa", a.kappa}});
    }
    return {{"weakly_isolated", w.weakly_isolated},
            {"singular", w.singular},
            {"nulls", w.nulls},
            {"bar", w.bar},
            {"isolated", w.isolated},
            {"decompositions", w.decompositions},
            {"attachments", att}};
}

class Session
{
public:
    explicit Session(const CaseFile &c) : c_(c)
    {
        if (c.foliation) {
            X_ = *c.foliation;
        } else if (!c.branches.empty()) {
            X_ = hamiltonian(curve_equation(c.branches));
        } else if (c.global) {
            X_ = hamiltonian(c.global->f);
        }
    }

    Json run(const std::string &command, std::string *dot)
    {
        if (command == "invariants") {
            return invariants(dot);
        }
        if (command == "resolve") {
            return resolve(dot);
        }
        if (command == "indices") {
            return indices();
        }
        if (command == "hertling") {
            return hertling();
        }
        if (command == "theorem1") {
            return theorem1();
        }
        if (command == "theorem2") {
            return theorem2();
        }
        if (command == "theorem3") {
            return theorem3();
        }
        if (command == "theorem4") {
            return theorem4();
        }
        if (command == "diagnostics") {
            return diagnostics();
        }
        fail(ErrorKind::InvalidInput, "unknown command \"" + command + "\"");
    }

    std::vector<std::string> applicable() const
    {
        std::vector<std::string> out;
        if (!c_.branches.empty()) {
            out = {"invariants", "resolve", "indices", "hertling", "theorem1", "theorem2", "theorem3", "diagnostics"};
        }
        if (c_.global && c_.global->projective) {
            out.push_back("theorem4");
        }
        return out;
    }

    // Rejects inputs whose lifts are not separated below the certified order.
    void audit()
    {
        if (c_.branches.empty()) {
            return;
        }
        const SmoothBranchSet &l = lifts();
        if (l.series.size() >= 2) {
            (void)truncation_audit(l, c_.truncation_audit_order);
        }
    }

private:
    const std::vector<PuiseuxBranch> &curve() const
    {
        if (c_.branches.empty()) {
            fail(ErrorKind::InvalidInput, "the case has no branches");
        }
        return c_.branches;
    }

    unsigned order_for(const std::vector<PuiseuxBranch> &bs) const
    {
        return std::lcm(c_.cyclotomic_order, working_field_order(bs));
    }

    const SmoothBranchSet &lifts()
    {
        if (!lifts_) {
            lifts_ = ramified_lift(curve(), order_for(curve()));
        }
        return *lifts_;
    }

    const ResolutionTree &tree()
    {
        if (!tree_) {
            tree_ = resolve_curve(curve());
        }
        return *tree_;
    }

    const FieldAlongTree &along()
    {
        if (!along_) {
            const ResolutionTree &t = tree();
            along_ = with_adaptive_precision([&](int K) { return transform_along(t, X_, K); });
        }
        return *along_;
    }

    const IndexReport &index()
    {
        if (!index_) {
            index_ = component_index_sums(tree(), along());
        }
        return *index_;
    }

    Json recursion()
    {
        Json out = Json::array();
        for (std::size_t i = 0; i < curve().size(); ++i) {
            try {
                (void)vanishing_order(X_, curve()[i]);
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::NotInvariant) {
                    throw;
                }
                continue;
            }
            const ZRecursion z = z_recursion_check(X_, tree(), along(), static_cast<int>(i));
            Json steps = Json::array();
            for (const auto &s : z.follow.steps) {
                steps.push_back({{"center", s.center},
                                 {"branch_mult", s.branch_mult},
                                 {"field_mult", s.field_mult},
                                 {"dicritical", s.dicritical},
                                 {"tau", s.tau}});
            }
            out.push_back({{"branch", curve()[i].name},
                           {"direct", z.direct},
                           {"telescope", z.telescope},
                           {"final_z", z.follow.final_z},
                           {"equal", z.equal},
                           {"steps", steps}});
        }
        return out;
    }

    static bool all_true(const Json &items, const char *key)
    {
        return std::all_of(items.begin(), items.end(), [&](const Json &j) { return j.at(key).get<bool>(); });
    }

    Json invariants(std::string *dot)
    {
        Json r;
        r["provenance"] = "characteristic exponents of the Puiseux series; jet tree of the ramified lifts";
        Json bs = Json::array();
        int nu = 0;
        int delta = 0;
        for (const auto &g : curve()) {
            const BranchInvariants inv = branch_invariants(g);
            nu += g.n;
            delta += inv.delta;
            bs.push_back({{"name", g.name},
                          {"n", g.n},
                          {"genus", inv.genus},
                          {"beta", inv.beta},
                          {"mult_seq", inv.mult_seq},
                          {"mu", inv.mu},
                          {"delta", inv.delta}});
        }
        r["branches"] = bs;
        r["nu_Gamma"] = nu;

        const SmoothBranchSet &l = lifts();
        r["ramification"] = l.n;
        r["lifts"] = static_cast<int>(l.series.size());
        bool packages_ok = true;
        if (l.series.size() >= 2) {
            const JetTree jt = build_jet_tree(l);
            const VirtualMultiplicities vm = virtual_multiplicities(jt);
            const PackagePartition pk = package_subcurve(jt);
            r["mu_T"] = vm.mu_T;
            r["mu_D"] = vm.mu_D;
            r["jet_nodes"] = static_cast<int>(jt.nodes.size());
            r["max_contact"] = jt.max_contact;
            r["packages"] = static_cast<int>(pk.packages.size());
            r["nu_packages"] = pk.nu_subcurve;
            packages_ok = static_cast<int>(pk.packages.size()) == vm.mu_D;
            if (dot) {
                *dot = jet_tree_dot(jt);
            }
        } else {
            // A single smooth branch: no jet is shared.
            r["mu_T"] = 1;
            r["mu_D"] = 1;
            r["jet_nodes"] = 0;
        }
        r["packages_match_mu_D"] = packages_ok;

        Json meets = Json::array();
        bool agree = true;
        for (std::size_t i = 0; i < curve().size(); ++i) {
            for (std::size_t j = i + 1; j < curve().size(); ++j) {
                const auto &g = curve()[i];
                const auto &h = curve()[j];
                const int res = intersection_multiplicity(g, h);
                const int lifted = intersection_multiplicity_lifted(g, h, order_for({g, h}));
                agree = agree && res == lifted;
                delta += res;
                meets.push_back({{"a", g.name}, {"b", h.name}, {"resultant", res}, {"lifted", lifted}});
            }
        }
        r["intersections"] = meets;
        r["intersections_agree"] = agree;
        r["delta"] = delta;
        r["verdict"] = verdict(agree && packages_ok);
        return r;
    }

    Json resolve(std::string *dot)
    {
        const ResolutionTree &t = tree();
        const FieldAlongTree &f = along();
        Json r;
        r["provenance"] = "point blow-ups of the curve; strict transforms of the field in both charts";
        Json centers = Json::array();
        for (const auto &c : t.centers) {
            const auto &fd = f.centers[static_cast<std::size_t>(c.index)];
            centers.push_back({{"index", c.index},
                               {"parent", c.parent},
                               {"through", c.through},
                               {"branches", c.branches},
                               {"branch_mult", c.branch_mult},
                               {"curve_mult", c.curve_mult},
                               {"nu", fd.nu},
                               {"dicritical", fd.dicritical}});
        }
        Json comps = Json::array();
        for (const auto &c : t.components) {
            comps.push_back({{"id", c.id},
                             {"father", c.father},
                             {"weight", c.weight},
                             {"invariant", f.is_invariant(c.id)},
                             {"neighbours", c.neighbours}});
        }
        Json bs = Json::array();
        bool match = true;
        for (std::size_t i = 0; i < curve().size(); ++i) {
            const std::vector<int> seq = t.mult_seq(static_cast<int>(i));
            const std::vector<int> euclid = branch_invariants(curve()[i]).mult_seq;
            const bool ok = same_up_to_ones(seq, euclid);
            match = match && ok;
            const Attachment &a = t.attach[i];
            bs.push_back({{"name", curve()[i].name},
                          {"mult_seq", seq},
                          {"euclid", euclid},
                          {"match", ok},
                          {"component", a.component},
                          {"point", a.point}});
        }
        r["centers"] = centers;
        r["components"] = comps;
        r["branches"] = bs;
        r["verdict"] = verdict(match);
        if (dot) {
            *dot = resolution_dot(t, &f);
        }
        return r;
    }

    Json indices()
    {
        Json r;
        r["provenance"] = "orders along the parametrizations; index sums over the resolution divisor";
        r["nu_F"] = multiplicity_foliation(X_);
        Json pairs = Json::array();
        for (const auto &g : curve()) {
            try {
                pairs.push_back({{"branch", g.name}, {"kind", "Z"}, {"value", vanishing_order(X_, g)}});
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::NotInvariant) {
                    throw;
                }
                pairs.push_back({{"branch", g.name}, {"kind", "tang"}, {"value", tangency_order(X_, g)}});
            }
        }
        r["branches"] = pairs;
        const IndexReport &idx = index();
        Json comps = Json::array();
        for (const auto &c : idx.components) {
            comps.push_back({{"component", c.component},
                             {"weight", c.weight},
                             {"invariant", c.invariant},
                             {"sum", c.sum},
                             {"invariant_corners", c.invariant_corners},
                             {"kappa_sum", c.kappa_sum},
                             {"valence", c.valence}});
        }
        Json points = Json::array();
        for (const auto &p : idx.points) {
            points.push_back({{"component", p.component},
                              {"point", p.point},
                              {"corner", p.corner},
                              {"kind", p.z_kind ? "Z" : "tang"},
                              {"value", p.value},
                              {"kappa", p.kappa}});
        }
        r["components"] = comps;
        r["points"] = points;
        const Json rec = recursion();
        r["recursion"] = rec;
        r["verdict"] = verdict(all_true(rec, "equal"));
        return r;
    }

    Json hertling()
    {
        const IndexReport &idx = index();
        const HertlingCheck h = hertling_check(along(), idx);
        const HiddenCheck hid = hidden_contribution_check(tree(), along(), idx);
        Json r;
        r["provenance"] = "weighted kappa over the resolution divisor";
        r["lhs"] = h.lhs;
        r["rhs"] = h.rhs;
        r["equal"] = h.equal;
        r["hidden"] = {{"groups", hid.groups},
                       {"weighted_kappa", hid.weighted_kappa},
                       {"min_weight", hid.min_weight},
                       {"holds", hid.holds}};
        r["verdict"] = verdict(h.equal && hid.holds);
        return r;
    }

    Json theorem1()
    {
        const Theorem1Report t = check_theorem1(X_, curve());
        Json r;
        r["provenance"] = "virtual multiplicities of the jet tree; ramified pullback of the field";
        r["nu_F"] = t.nu;
        r["mu_T"] = t.mu_T;
        r["mu_D"] = t.mu_D;
        r["basic"] = t.basic;
        r["ramification"] = t.ramification;
        r["nu_lifted"] = t.nu_lifted;
        r["lift_keeps_nu"] = t.lift_keeps_nu;
        r["lift_hypothesis"] = t.lift_hypothesis;
        r["tree_matches_jets"] = t.tree_matches_jets;
        r["dicritical_count"] = t.dicritical_count;
        r["groups"] = t.groups;
        r["group_branches"] = t.group_branches;
        r["refined"] = t.refined;
        r["refined_holds"] = t.refined_holds;
        r["refined_dominates"] = t.refined_dominates;
        r["lifted_hertling"] = t.lifted_hertling;
        r["verdict"] = verdict(t.pass);
        return r;
    }

    Json theorem2()
    {
        const Theorem2Report t = check_theorem2(X_, curve());
        Json r;
        r["provenance"] = "separating centers of the resolution; energies from weighted kappa";
        r["nu_F"] = t.nu;
        r["nu_Gamma"] = t.curve_mult;
        r["hypothesis"] = t.hypothesis;
        r["isolation"] = isolation_json(t.isolation);
        Json blocks = Json::array();
        for (const auto &b : t.blocks) {
            blocks.push_back({{"center", b.center},
                              {"components", b.components},
                              {"host", b.host},
                              {"host_weight", b.host_weight},
                              {"link", b.link},
                              {"delta", b.delta},
                              {"weighted_kappa", b.weighted_kappa},
                              {"energy", b.energy},
                              {"branch_mult", b.branch_mult},
                              {"isolated_mult", b.isolated_mult},
                              {"energy_at_least_weight", b.energy_at_least_weight},
                              {"energy_at_least_half", b.energy_at_least_half},
                              {"kappa_covers_branches", b.kappa_covers_branches},
                              {"hidden_groups", b.hidden_groups}});
        }
        r["blocks"] = blocks;
        r["energy_total"] = t.energy_total;
        r["blocks_partition"] = t.blocks_partition;
        r["energy_sums_to_nu"] = t.energy_sums_to_nu;
        r["lemmas"] = t.lemmas;
        r["bound"] = t.bound;
        r["verdict"] = verdict(t.pass);
        return r;
    }

    Json theorem3_branch(int i)
    {
        const Theorem3Report t = check_theorem3(X_, curve(), i);
        Json path = Json::array();
        for (const auto &s : t.path) {
            path.push_back({{"center", s.center},
                            {"branch_mult", s.branch_mult},
                            {"curve_mult", s.curve_mult},
                            {"divisors", s.divisors},
                            {"all_invariant", s.all_invariant},
                            {"field_mult", s.field_mult},
                            {"dicritical", s.dicritical},
                            {"tau", s.tau},
                            {"ham_mult", s.ham_mult},
                            {"in_omega", s.in_omega},
                            {"precursor", s.precursor},
                            {"leader", s.leader},
                            {"theta2", s.theta2},
                            {"theta_ok", s.theta_ok}});
        }
        Json r{{"branch", curve()[static_cast<std::size_t>(i)].name},
               {"hypothesis", t.hypothesis},
               {"Z_F", t.z_field},
               {"Z_H", t.z_ham},
               {"bound", t.bound}};
        if (!t.hypothesis) {
            r["pass"] = t.pass;
            return r;
        }
        r.update(Json{{"path", path},
                {"i_one", t.i_one},
                {"omega", t.omega},
                {"iota", t.iota},
                {"rho", t.rho},
                {"fine", t.fine},
                {"coarse", t.coarse},
                {"fine_theta2", t.fine_theta2},
                {"coarse_theta2", t.coarse_theta2},
                {"final_Z_F", t.final_z_field},
                {"final_Z_H", t.final_z_ham},
                {"telescopes", t.telescopes},
                {"final_lemma", t.final_lemma},
                {"theta_bounds", t.theta_bounds},
                {"fine_bounds", t.fine_bounds},
                {"coarse_bounds", t.coarse_bounds},
                {"omega_rule", t.omega_rule},
                {"field_mult_positive", t.field_mult_positive},
                {"lines_case", t.lines_case},
                {"lines_lemma", t.lines_lemma},
                {"diagnostics", t.diagnostics},
                {"pass", t.pass}});
        return r;
    }

    Json theorem3()
    {
        Json r;
        r["provenance"] = "orders of F and of the hamiltonian along each branch; path data from the resolution";
        Json bs = Json::array();
        for (std::size_t i = 0; i < curve().size(); ++i) {
            bs.push_back(theorem3_branch(static_cast<int>(i)));
        }
        r["branches"] = bs;
        r["verdict"] = verdict(all_true(bs, "pass"));
        return r;
    }

    GlobalInstance global_instance() const
    {
        if (!c_.global || !c_.global->projective) {
            fail(ErrorKind::InvalidInput, "theorem4 needs a global section with projective: true");
        }
        return GlobalInstance{c_.global->f, X_, c_.global->points};
    }

    static Json global_json(const GlobalData &d)
    {
        Json points = Json::array();
        for (const auto &p : d.points) {
            points.push_back({{"name", p.name},
                              {"curve_singular", p.curve_singular},
                              {"field_zero", p.field_zero},
                              {"multiplicity", p.multiplicity},
                              {"delta", p.delta},
                              {"Z_F", p.z_field},
                              {"Z_H", p.z_ham}});
        }
        return {{"m", d.infinity.m},
                {"d", d.infinity.d},
                {"c", d.c},
                {"delta_total", d.delta_total},
                {"chi", d.chi},
                {"Z_F", d.z_field},
                {"Z_H", d.z_ham},
                {"P_F", d.poles_field},
                {"P_H", d.poles_ham},
                {"audit_shear", d.audit_shear},
                {"points", points}};
    }

    Json poincare_hopf()
    {
        const PoincareHopfReport ph = poincare_hopf_check(global_instance());
        Json r = global_json(ph.data);
        r["P_F_formula"] = ph.poles_field_formula;
        r["P_H_formula"] = ph.poles_ham_formula;
        r["P_F_match"] = ph.poles_field_match;
        r["P_H_match"] = ph.poles_ham_match;
        r["field_balance"] = ph.field_balance;
        r["ham_balance"] = ph.ham_balance;
        r["pass"] = ph.pass;
        return r;
    }

    Json theorem4()
    {
        const DegreeBoundReport db = degree_bound_verdict(global_instance());
        Json r;
        r["provenance"] = "point data by local resolution; poles from the chart at infinity; components by Gao's criterion";
        const Json ph = poincare_hopf();
        r["poincare_hopf"] = ph;
        Json iso = Json::array();
        for (const auto &w : db.isolation) {
            iso.push_back(isolation_json(w));
        }
        r["m"] = db.m;
        r["d"] = db.d;
        r["c"] = db.c;
        r["isolation"] = iso;
        r["hypothesis"] = db.hypothesis;
        r["half_bound"] = db.half_bound;
        r["chain"] = db.chain;
        r["aux"] = db.aux;
        r["lines"] = db.lines;
        r["lines_lemma"] = db.lines_lemma;
        r["lines_bound"] = db.lines_bound;
        r["bound"] = db.bound;
        r["irreducible_bound"] = db.irreducible_bound;
        r["tight"] = db.tight;
        r["verdict"] = verdict(db.pass && ph.at("pass").get<bool>());
        return r;
    }

    Json diagnostics()
    {
        Json r;
        r["provenance"] = "proof-internal quantities along the resolution";
        bool pass = true;

        const Json rec = recursion();
        r["recursion"] = rec;
        pass = pass && all_true(rec, "equal");

        const Field H = hamiltonian(curve_equation(curve()));
        const FieldAlongTree ha = with_adaptive_precision([&](int K) { return transform_along(tree(), H, K); });
        const GeneralizedCurveCheck gc = generalized_curve_check(tree(), ha);
        r["generalized_curve"] = {{"field_mult", gc.field_mult}, {"expected", gc.expected}, {"holds", gc.holds}};
        pass = pass && gc.holds;

        Json virt = Json::array();
        for (const auto &g : curve()) {
            try {
                const VirtualBound v = virtual_bound_check(X_, g);
                virt.push_back({{"branch", g.name}, {"nu", v.nu}, {"mu", v.mu}, {"pass", v.pass}});
                pass = pass && v.pass;
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::NotInvariant) {
                    throw;
                }
            }
        }
        r["virtual_bound"] = virt;

        try {
            const BlowupIsolationReport b = weak_isolation_blowup_property(X_, curve());
            Json pts = Json::array();
            for (const auto &p : b.points) {
                pts.push_back({{"point", p.point},
                               {"components", p.components},
                               {"divisor_included", p.divisor_included},
                               {"weakly_isolated", p.report.weakly_isolated}});
            }
            r["blowup_isolation"] = {{"points", pts}, {"vacuous", b.vacuous}, {"pass", b.pass}};
            pass = pass && b.pass;
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::HypothesisFailed) {
                throw;
            }
            r["blowup_isolation"] = {{"skipped", e.what()}};
        }

        Json paths = Json::array();
        for (std::size_t i = 0; i < curve().size(); ++i) {
            try {
                Json t = theorem3_branch(static_cast<int>(i));
                if (t.at("hypothesis").get<bool>()) {
                    pass = pass && t.at("diagnostics").get<bool>();
                }
                paths.push_back(std::move(t));
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::HypothesisFailed && e.kind() != ErrorKind::NotInvariant) {
                    throw;
                }
                paths.push_back({{"branch", curve()[i].name}, {"skipped", e.what()}});
            }
        }
        r["theorem3_paths"] = paths;

        if (c_.global && c_.global->projective) {
            const Json ph = poincare_hopf();
            r["poincare_hopf"] = ph;
            pass = pass && ph.at("pass").get<bool>();
        }
        r["verdict"] = verdict(pass);
        return r;
    }

    const CaseFile &c_;
    Field X_;
    std::optional<SmoothBranchSet> lifts_;
    std::optional<ResolutionTree> tree_;
    std::optional<FieldAlongTree> along_;
    std::optional<IndexReport> index_;
};

void render(std::ostringstream &out, const Json &v, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    auto scalar_list = [](const Json &a) {
        return std::all_of(a.begin(), a.end(), [](const Json &e) { return !e.is_structured() || (e.is_array() && e.empty()); });
    };
    for (auto it = v.begin(); it != v.end(); ++it) {
        const Json &e = it.value();
        if (e.is_object()) {
            out << pad << it.key() << ":\n";
            render(out, e, indent + 2);
        } else if (e.is_array() && !scalar_list(e)) {
            out << pad << it.key() << ":\n";
            for (const auto &item : e) {
                if (item.is_object()) {
                    out << pad << "  -\n";
                    render(out, item, indent + 4);
                } else {
                    out << pad << "  - " << item.dump() << "\n";
                }
            }
        } else if (e.is_string()) {
            out << pad << it.key() << ": " << e.get<std::string>() << "\n";
        } else {
            out << pad << it.key() << ": " << e.dump() << "\n";
        }
    }
}

} // namespace

Outcome run_command(const CaseFile &c, const std::string &command, std::string *dot)
{
    Session s(c);
    s.audit();
    Outcome o;
    o.report["case"] = c.source;
    o.report["command"] = command;
    if (command != "all") {
        Json r = s.run(command, dot);
        o.pass = r.at("verdict") == "pass";
        o.report.update(r);
        return o;
    }
    const std::vector<std::string> list = c.checks.empty() ? s.applicable() : c.checks;
    Json sections = Json::object();
    bool pass = true;
    std::string resolve_dot;
    for (const auto &name : list) {
        std::string *target = nullptr;
        if (dot && name == "resolve") {
            target = &resolve_dot;
        } else if (dot && name == "invariants" && resolve_dot.empty()) {
            target = dot;
        }
        try {
            Json r = s.run(name, target);
            pass = pass && r.at("verdict") == "pass";
            sections[name] = std::move(r);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::HypothesisFailed) {
                throw;
            }
            sections[name] = {{"skipped", e.what()}};
        }
    }
    if (dot && !resolve_dot.empty()) {
        *dot = resolve_dot;
    }
    o.report["sections"] = sections;
    o.report["verdict"] = verdict(pass);
    o.pass = pass;
    return o;
}

std::string render_text(const Json &report)
{
    std::ostringstream out;
    render(out, report, 0);
    return out.str();
}

} // namespace folbound
