#include "spaceform/cli.hpp"

#include "spaceform/groups.hpp"
#include "spaceform/linear_actions.hpp"
#include "spaceform/obstruction.hpp"
#include "spaceform/paper_checks.hpp"
#include "spaceform/steenrod.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace spaceform::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Input the user can fix; reported with exit status 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

BigInt parse_bigint(const std::string& text, const std::string& what)
{
    const bool neg = !text.empty() && text[0] == '-';
    const std::string digits = neg ? text.substr(1) : text;
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw UsageError(what + " must be a decimal integer, got '" + text + "'");
    BigInt v(digits);
    return neg ? BigInt(-v) : v;
}

std::int64_t parse_int(const std::string& text, const std::string& what)
{
    const BigInt v = parse_bigint(text, what);
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw UsageError(what + " is out of range: " + text);
    return static_cast<std::int64_t>(v);
}

std::uint64_t parse_positive(const std::string& text, const std::string& what)
{
    const std::int64_t v = parse_int(text, what);
    if (v < 1)
        throw UsageError(what + " must be positive, got " + text);
    return static_cast<std::uint64_t>(v);
}

std::uint64_t group_order_cap()
{
    const char* env = std::getenv("OBSTRUCT_MAX_GROUP_ORDER");
    if (env == nullptr || *env == '\0')
        return groups::kDefaultMaxGroupOrder;
    return parse_positive(env, "OBSTRUCT_MAX_GROUP_ORDER");
}

Json big(const BigInt& v)
{
    if (v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min())
        return static_cast<std::int64_t>(v);
    return v.str();
}

Json group_json(const groups::SpaceFormGroup& g)
{
    return {{"a", big(g.a())},   {"b", big(g.b())},         {"c", big(g.c())},
            {"d", big(g.d())},   {"order", big(g.order())}, {"cyclic", g.is_cyclic()},
            {"period", big(groups::cohomology_period(g).period)}};
}

void print_text(std::ostream& out, const Json& obj)
{
    std::size_t width = 0;
    for (const auto& [k, v] : obj.items())
        width = std::max(width, k.size());
    for (const auto& [k, v] : obj.items())
        out << std::left << std::setw(static_cast<int>(width) + 2) << k
            << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

void emit(std::ostream& out, const std::string& format, const Json& obj)
{
    if (format == "json")
        out << obj.dump(2) << '\n';
    else
        print_text(out, obj);
}

groups::SpaceFormGroup classify_args(const std::string& a, const std::string& b, const std::string& c)
{
    return groups::classify(groups::AdmissibleTriple::make(parse_bigint(a, "a"), parse_bigint(b, "b"),
                                                           parse_bigint(c, "c")));
}

int cmd_classify(std::ostream& out, const std::string& format, const std::string& a, const std::string& b,
                 const std::string& c, bool audit)
{
    const auto g = classify_args(a, b, c);
    Json obj = group_json(g);
    int status = kExitOk;
    if (audit) {
        const groups::MetacyclicTable table(g, group_order_cap());
        const auto r = groups::audit_structure(table);
        const bool ok = r.ok(table.d());
        obj["structure"] = {{"relations_hold", r.relations_hold},
                            {"generates_all", r.generates_all},
                            {"subgroup_cyclic", r.subgroup_cyclic},
                            {"subgroup_normal", r.subgroup_normal},
                            {"subgroup_index", r.subgroup_index},
                            {"noncyclic_abelian", r.noncyclic_abelian},
                            {"ok", ok}};
        status = ok ? kExitOk : kExitCheckFailed;
    }
    emit(out, format, obj);
    return status;
}

int cmd_enumerate(std::ostream& out, const std::string& format, const std::string& a_max, const std::string& b_max,
                  const std::string& d)
{
    const std::uint64_t am = parse_positive(a_max, "--a-max"), bm = parse_positive(b_max, "--b-max");
    const std::uint64_t cap = group_order_cap();
    if (static_cast<unsigned __int128>(am) * bm > cap)
        throw UsageError("--a-max * --b-max exceeds the enumeration cap " + std::to_string(cap) +
                         " (set OBSTRUCT_MAX_GROUP_ORDER to raise it)");
    std::optional<std::uint64_t> filter;
    if (!d.empty())
        filter = parse_positive(d, "--d");
    const auto all = groups::enumerate_admissible(am, bm, filter);
    if (format == "json") {
        Json arr = Json::array();
        for (const auto& g : all)
            arr.push_back(group_json(g));
        out << arr.dump(2) << '\n';
        return kExitOk;
    }
    out << std::right << std::setw(8) << "a" << std::setw(8) << "b" << std::setw(8) << "c" << std::setw(6) << "d"
        << std::setw(10) << "order" << '\n';
    for (const auto& g : all)
        out << std::setw(8) << g.a() << std::setw(8) << g.b() << std::setw(8) << g.c() << std::setw(6) << g.d()
            << std::setw(10) << g.order() << '\n';
    out << all.size() << " groups\n";
    return kExitOk;
}

int cmd_subgroup_index(std::ostream& out, const std::string& format, const std::string& a, const std::string& b,
                       const std::string& c)
{
    const auto g = classify_args(a, b, c);
    const auto sub = groups::cyclic_subgroup_index(g);
    emit(out, format,
         {{"group", g.name()},
          {"index", big(sub.index)},
          {"order", big(sub.order)},
          {"generators", "alpha, beta^" + sub.index.str()}});
    return kExitOk;
}

int cmd_rep(std::ostream& out, const std::string& format, const std::string& p_text, const std::string& n_text,
            bool verify_free, bool verify_hopf, const std::string& convention)
{
    const std::int64_t p = parse_int(p_text, "--p"), n = parse_int(n_text, "--n");
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
        throw UsageError("--p must be an odd prime, got " + p_text);
    if (n < 1 || (n + 1) % (2 * p) != 0)
        throw UsageError("2p must divide n + 1 (p=" + p_text + ", n=" + n_text + ")");
    const auto conv = convention == "transposed" ? linear_actions::BetaConvention::Transposed
                                                 : linear_actions::BetaConvention::Standard;
    const auto bundle = linear_actions::build_sphere_action(p, n, conv);
    Json obj{{"p", p},
             {"n", n},
             {"group", bundle.group.name()},
             {"d", big(bundle.group.d())},
             {"order", big(bundle.group.order())},
             {"torus_rank", bundle.torus_rank},
             {"blocks", bundle.blocks()},
             {"beta_convention", convention}};
    bool ok = true;
    if (verify_free) {
        const bool free = linear_actions::is_free_representation(bundle, group_order_cap());
        obj["free"] = free;
        if (free)
            obj["period"] = big(linear_actions::sphere_action_period(bundle, group_order_cap()).period);
        ok = ok && free;
    }
    if (verify_hopf) {
        const bool hopf = linear_actions::diagonal_circle_is_free(bundle);
        obj["hopf_free"] = hopf;
        ok = ok && hopf;
    }
    emit(out, format, obj);
    return ok ? kExitOk : kExitCheckFailed;
}

int parse_prime(const std::string& text)
{
    const std::int64_t p = parse_int(text, "--p");
    if (p < 3 || p > 1'000'003 || !is_prime(static_cast<std::uint64_t>(p)))
        throw UsageError("--p must be an odd prime, got " + text);
    return static_cast<int>(p);
}

int cmd_normalize(std::ostream& out, const std::string& format, const std::string& p_text, const std::string& word,
                  const std::string& order)
{
    const int p = parse_prime(p_text);
    steenrod::SteenrodWord w;
    try {
        w = steenrod::parse_word(word, p);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto result = steenrod::adem_normalize(
        w, order == "rightmost" ? steenrod::RewriteOrder::Rightmost : steenrod::RewriteOrder::Leftmost);
    if (format == "json")
        out << Json{{"p", p}, {"input", word}, {"normal_form", result.str()}}.dump(2) << '\n';
    else
        out << result.str() << '\n';
    return kExitOk;
}

int cmd_identities(std::ostream& out, const std::string& format, const std::string& p_text)
{
    const int p = parse_prime(p_text);
    const auto checks = steenrod::standard_identities(p);
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
    if (format == "json") {
        Json arr = Json::array();
        for (const auto& c : checks)
            arr.push_back({{"identity", c.label}, {"holds", c.holds}});
        out << Json{{"p", p}, {"identities", arr}, {"pass", ok}}.dump(2) << '\n';
    } else {
        for (const auto& c : checks)
            out << (c.holds ? "PASS  " : "FAIL  ") << c.label << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_act(std::ostream& out, const std::string& format, const std::string& p_text, const std::string& k_text,
            const std::string& word)
{
    const int p = parse_prime(p_text);
    const std::int64_t k = parse_int(k_text, "--k");
    if (k < 0)
        throw UsageError("--k must be nonnegative");
    steenrod::SteenrodWord w;
    try {
        w = steenrod::parse_word(word, p);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const steenrod::ModelClass x{static_cast<std::uint64_t>(k), 1};
    const auto direct = steenrod::act_word(w, steenrod::ModelSum(p, x));
    const auto via_normal = steenrod::act_on_model(steenrod::adem_normalize(w), x);
    const bool agree = direct == via_normal;
    if (format == "json")
        out << Json{{"p", p}, {"k", k}, {"word", word}, {"image", direct.str()}, {"normal_form_agrees", agree}}.dump(2)
            << '\n';
    else
        out << direct.str() << '\n';
    return agree ? kExitOk : kExitCheckFailed;
}

int cmd_obstruct(std::ostream& out, const std::string& format, const std::string& n_text, const std::string& r_text,
                 const std::vector<obstruction::Flag>& flags, const std::string& q_text)
{
    obstruction::Hypotheses h;
    h.n = parse_int(n_text, "--n");
    h.r = parse_int(r_text, "--r");
    h.flags.insert(flags.begin(), flags.end());
    std::optional<Fraction> q;
    if (!q_text.empty()) {
        try {
            q = Fraction::parse(q_text);
        } catch (const std::exception& e) {
            throw UsageError(std::string("--q: ") + e.what());
        }
    }
    obstruction::ObstructionReport report;
    try {
        report = obstruction::apply_all(h, q);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (format == "json") {
        out << obstruction::to_json(report).dump(2) << '\n';
        return kExitOk;
    }
    out << "n=" << report.hypotheses.n << " r=" << report.hypotheses.r;
    for (auto f : report.hypotheses.flags)
        out << ' ' << obstruction::to_string(f);
    out << '\n';
    for (const auto& c : report.applied)
        out << "  " << std::left << std::setw(18) << obstruction::to_string(c.kind) << std::setw(32) << c.source
            << c.params.dump() << '\n';
    for (const auto& na : report.non_applicable)
        out << "  " << std::left << std::setw(18) << "-" << std::setw(32) << na.source << "needs " << na.failed << '\n';
    return kExitOk;
}

int cmd_paper_checks(std::ostream& out, const std::string& format, const std::vector<std::string>& only,
                     const std::string& n_max, const std::string& ccs_n_max, const std::string& group_order_max)
{
    paper_checks::CheckOptions opt;
    opt.only.insert(only.begin(), only.end());
    opt.max_group_order = group_order_cap();
    if (!n_max.empty())
        opt.n_max = parse_int(n_max, "--n-max");
    if (!ccs_n_max.empty())
        opt.ccs_n_max = parse_int(ccs_n_max, "--ccs-n-max");
    if (!group_order_max.empty())
        opt.group_order_max = parse_positive(group_order_max, "--group-order-max");
    std::vector<paper_checks::CheckRow> rows;
    try {
        rows = paper_checks::run_paper_checks(opt);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto failed = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.pass; });
    if (format == "json") {
        Json arr = Json::array();
        for (const auto& r : rows)
            arr.push_back(
                {{"group", r.group}, {"check", r.name}, {"anchor", r.anchor}, {"pass", r.pass}, {"detail", r.detail}});
        out << Json{{"checks", arr}, {"failed", failed}}.dump(2) << '\n';
    } else {
        for (const auto& r : rows) {
            out << (r.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(9) << r.group << r.name;
            if (!r.detail.empty())
                out << "  (" << r.detail << ')';
            out << "\n      anchor: " << r.anchor << '\n';
        }
        out << rows.size() << " checks, " << rows.size() - failed << " passed, " << failed << " failed\n";
    }
    return failed == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact checks for torus-rank obstructions on spherical space forms", "spaceform"};
    app.require_subcommand(1);
    const std::vector<std::string> formats{"text", "json"};

    std::string format = "text", a, b, c, a_max, b_max, d_filter;
    bool audit = false;
    auto* groups_cmd = app.add_subcommand("groups", "Metacyclic groups Gamma(a,b,c)");
    groups_cmd->require_subcommand(1);
    auto* classify = groups_cmd->add_subcommand("classify", "Validate a triple and report d, order and period");
    classify->add_option("a", a)->required();
    classify->add_option("b", b)->required();
    classify->add_option("c", c)->required();
    classify->add_flag("--audit", audit, "Audit the full multiplication table");
    classify->add_option("--format", format)->check(CLI::IsMember(formats));
    auto* enumerate = groups_cmd->add_subcommand("enumerate", "All admissible triples in a box");
    enumerate->add_option("--a-max", a_max)->required();
    enumerate->add_option("--b-max", b_max)->required();
    enumerate->add_option("--d", d_filter, "Keep only groups in C_d");
    enumerate->add_option("--format", format)->check(CLI::IsMember(formats));
    auto* subgroup = groups_cmd->add_subcommand("subgroup-index", "The normal cyclic subgroup of index d");
    subgroup->add_option("a", a)->required();
    subgroup->add_option("b", b)->required();
    subgroup->add_option("c", c)->required();
    subgroup->add_option("--format", format)->check(CLI::IsMember(formats));

    std::string p_text, n_text, convention = "standard";
    bool verify_free = false, verify_hopf = false;
    auto* rep = app.add_subcommand("rep", "Free linear sphere actions");
    rep->require_subcommand(1);
    auto* build = rep->add_subcommand("build", "Build the action of Gamma(a,p^2,c) and T^r on S^n");
    build->add_option("--p", p_text)->required();
    build->add_option("--n", n_text)->required();
    build->add_flag("--verify-free", verify_free, "Check every group element for eigenvalue 1");
    build->add_flag("--verify-hopf", verify_hopf, "Check that the diagonal circle acts freely");
    build->add_option("--beta", convention)->check(CLI::IsMember({"standard", "transposed"}));
    std::string rep_format = "json";
    build->add_option("--format", rep_format)->check(CLI::IsMember(formats));

    std::string word, order = "leftmost", k_text;
    auto* steen = app.add_subcommand("steenrod", "The mod p Steenrod algebra");
    steen->require_subcommand(1);
    auto* normalize = steen->add_subcommand("normalize", "Rewrite a word in the admissible basis");
    normalize->add_option("--p", p_text)->required();
    normalize->add_option("word", word)->required();
    normalize->add_option("--order", order)->check(CLI::IsMember({"leftmost", "rightmost"}));
    normalize->add_option("--format", format)->check(CLI::IsMember(formats));
    auto* identities = steen->add_subcommand("identities", "Check the standard identities at p");
    identities->add_option("--p", p_text)->required();
    identities->add_option("--format", format)->check(CLI::IsMember(formats));
    auto* act = steen->add_subcommand("act", "Apply a word to x^k in F_p[x]");
    act->add_option("--p", p_text)->required();
    act->add_option("--k", k_text)->required();
    act->add_option("word", word)->required();
    act->add_option("--format", format)->check(CLI::IsMember(formats));

    std::string r_text, q_text;
    bool rational = false, integral = false, no_fixed = false, circle = false;
    std::string obstruct_format = "json";
    auto* obstruct = app.add_subcommand("obstruct", "Constraints on pi_1 from (n, r) and structural flags");
    obstruct->add_option("--n", n_text)->required();
    obstruct->add_option("--r", r_text)->required();
    obstruct->add_flag("--rational-sphere", rational, "Universal cover is a rational homology sphere");
    obstruct->add_flag("--integral-sphere", integral, "Universal cover is an integral homology sphere");
    obstruct->add_flag("--no-fixed-point", no_fixed, "The torus action has no fixed point");
    obstruct->add_flag("--circle", circle, "Only a circle acts (r = 1)");
    obstruct->add_option("--q", q_text, "Fixed q for the quadratic abelian-rank bound, as NUM or NUM/DEN");
    obstruct->add_option("--format", obstruct_format)->check(CLI::IsMember(formats));

    std::vector<std::string> only;
    std::string n_max, ccs_n_max, group_order_max;
    auto* verify = app.add_subcommand("verify", "Reproduce the finite checks");
    verify->require_subcommand(1);
    auto* paper = verify->add_subcommand("paper-checks", "Run every finite check and print one row each");
    paper->add_option("--only", only, "Comma-separated check groups")
        ->delimiter(',')
        ->check(CLI::IsMember(paper_checks::check_groups()));
    paper->add_option("--n-max", n_max, "Upper end of the log-rank sweeps (default 10000)");
    paper->add_option("--ccs-n-max", ccs_n_max, "Upper end of the three-band sweep (default 10000)");
    paper->add_option("--group-order-max", group_order_max, "Largest group order audited (default 10000)");
    paper->add_option("--format", format)->check(CLI::IsMember(formats));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*classify)
            return cmd_classify(out, format, a, b, c, audit);
        if (*enumerate)
            return cmd_enumerate(out, format, a_max, b_max, d_filter);
        if (*subgroup)
            return cmd_subgroup_index(out, format, a, b, c);
        if (*build)
            return cmd_rep(out, rep_format, p_text, n_text, verify_free, verify_hopf, convention);
        if (*normalize)
            return cmd_normalize(out, format, p_text, word, order);
        if (*identities)
            return cmd_identities(out, format, p_text);
        if (*act)
            return cmd_act(out, format, p_text, k_text, word);
        if (*obstruct) {
            std::vector<obstruction::Flag> flags;
            if (rational)
                flags.push_back(obstruction::Flag::RationalSphereCover);
            if (integral)
                flags.push_back(obstruction::Flag::IntegralSphereCover);
            if (no_fixed)
                flags.push_back(obstruction::Flag::TorusFixedPointFree);
            if (circle)
                flags.push_back(obstruction::Flag::CircleActionOnly);
            return cmd_obstruct(out, obstruct_format, n_text, r_text, flags, q_text);
        }
        if (*paper)
            return cmd_paper_checks(out, format, only, n_max, ccs_n_max, group_order_max);
    } catch (const groups::NotAdmissible& e) {
        err << "error: not admissible: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const groups::CapExceeded& e) {
        err << "error: " << e.what() << " (set OBSTRUCT_MAX_GROUP_ORDER to raise it)\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    err << "error: no command given\n";
    return kExitUsage;
}

}  // namespace spaceform::cli
