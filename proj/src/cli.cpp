#include "poisson/cli.hpp"

#include "poisson/algebra_json.hpp"
#include "poisson/catalog.hpp"
#include "poisson/cocycle.hpp"
#include "poisson/degeneration.hpp"
#include "poisson/errors.hpp"
#include "poisson/invariants.hpp"
#include "poisson/separating.hpp"
#include "poisson/structure.hpp"
#include "poisson/varietygraph.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>

namespace poisson {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::uint64_t seed = 42;
    int trials = 1000;
    int stability_trials = 200;
    bool json = false;
    int n = 0;
    std::string out_path;
    std::string data;
    std::string view = "families";
    std::vector<std::string> positional;
};

fs::path data_dir(const Options& o) { return o.data.empty() ? default_data_dir() : fs::path(o.data); }

// A file path as given, else relative to the data directory.
fs::path locate(const Options& o, const std::string& p)
{
    if (fs::exists(p))
        return p;
    if (fs::exists(data_dir(o) / p))
        return data_dir(o) / p;
    throw InputError("no such file: " + p);
}

// Catalog key or algebra JSON file.
BilinearPair<Rational> load_algebra(const Options& o, const std::string& spec)
{
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
        std::ifstream in(locate(o, spec));
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ParseError(spec + ": " + e.what());
        }
        return pair_from_json(j);
    }
    return build(CatalogKey::parse(spec));
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int cmd_catalog(const Options& o, std::ostream& out)
{
    if (o.positional.empty()) {
        json j;
        j["poisson3"] = three_dim_poisson_families();
        j["commutative3"] = commutative_families();
        j["lie3"] = lie_families();
        j["filiform"] = filiform_families();
        j["parametric"] = {"P3.4(alpha=a)", "P3.16(alpha=a)", "L3.4(alpha=a)", "mu0(n=N)", "mu11(n=N)", "mu12(n=N)"};
        if (o.json) {
            emit(out, j);
            return 0;
        }
        for (auto& [name, list] : j.items()) {
            out << std::left << std::setw(14) << name;
            for (auto& k : list)
                out << " " << k.get<std::string>();
            out << "\n";
        }
        return 0;
    }
    for (auto& spec : o.positional) {
        auto key = CatalogKey::parse(spec);
        auto p = build(key);
        if (o.json) {
            emit(out, {{"key", key.str()}, {"algebra", pair_to_json(p)}});
        } else {
            out << key.str() << "  " << table_str(p) << "\n";
        }
    }
    return 0;
}

int cmd_check(const Options& o, std::ostream& out)
{
    if (o.positional.size() != 1)
        throw InputError("check takes one algebra (JSON file or catalog key)");
    auto p = load_algebra(o, o.positional.front());
    json j = json::object();
    bool poisson = true;
    for (auto id : {Identity::commutative, Identity::anticommutative, Identity::associative, Identity::jacobi,
                    Identity::leibniz, Identity::malcev}) {
        auto rep = check_identity(p, id);
        if (id != Identity::malcev)
            poisson = poisson && rep.holds;
        j[identity_name(id)] = {{"holds", rep.holds}, {"witness", rep.witness}};
        if (!o.json) {
            out << std::left << std::setw(16) << identity_name(id) << (rep.holds ? "holds" : "FAILS");
            if (!rep.holds) {
                out << " at basis indices";
                for (int w : rep.witness)
                    out << " " << w;
            }
            out << "\n";
        }
    }
    j["poisson"] = poisson;
    if (o.json)
        emit(out, j);
    else
        out << (poisson ? "Poisson algebra" : "not a Poisson algebra") << "\n";
    return poisson ? 0 : 1;
}

int cmd_z2(const Options& o, std::ostream& out)
{
    if (o.positional.size() != 1)
        throw InputError("z2 takes one commutative algebra (JSON file or catalog key)");
    auto p = load_algebra(o, o.positional.front());
    auto rep = z2_report(p.dot, 50, o.seed);
    if (o.json) {
        json b = json::array();
        for (auto& t : rep.basis)
            b.push_back(skew_to_json(t));
        emit(out, {{"linear_dim", rep.linear_dim},
                   {"jacobi_automatic", rep.jacobi_automatic},
                   {"sampled_ok", rep.sampled_ok},
                   {"basis", b}});
    } else {
        out << "dim Z2 (Leibniz) = " << rep.linear_dim << "\n";
        out << "Jacobi automatic: " << (rep.jacobi_automatic ? "yes" : "no") << "\n";
        for (size_t i = 0; i < rep.basis.size(); ++i)
            out << "  theta_" << i + 1 << " = " << rep.basis[i].str() << "\n";
    }
    return 0;
}

int cmd_invariants(const Options& o, std::ostream& out)
{
    if (o.positional.empty()) {
        auto rows = check_table1();
        if (o.json)
            emit(out, table1_json(rows));
        else
            out << table1_text(rows);
        for (auto& r : rows)
            if (!r.dim_der_ok || !r.labels_ok)
                return 1;
        return 0;
    }
    json all = json::array();
    for (auto& spec : o.positional) {
        auto prof = invariant_profile(load_algebra(o, spec));
        json j = profile_to_json(prof);
        j["algebra"] = spec;
        all.push_back(j);
        if (!o.json) {
            out << spec << ": dim Der " << prof.dim_der << ", orbit dim " << prof.orbit_dim << ", ann "
                << prof.ann_dot << "/" << prof.ann_bracket << "/" << prof.ann_joint << ", squares "
                << prof.dim_dot_square << "/" << prof.dim_bracket_square << "/" << prof.dim_p_square << "\n";
        }
    }
    if (o.json)
        emit(out, all);
    return 0;
}

// Verifies every instance of every witness file; one line per instance.
bool verify_files(const Options& o, const std::vector<WitnessFile>& files, std::ostream& out, json& results)
{
    bool ok = true;
    for (auto& w : files)
        for (auto& inst : instantiate(w)) {
            auto res = verify_witness(inst, o.seed);
            ok = ok && res.check.ok;
            results.push_back({{"file", w.path}, {"label", inst.label}, {"ok", res.check.ok},
                               {"problems", res.check.problems}, {"sanity_ok", res.check.sanity_ok}});
            if (!o.json)
                out << (res.check.ok ? "VERIFIED  " : "FAILED    ") << inst.label
                    << (res.check.ok ? "" : ": " + res.check.summary()) << "\n";
        }
    return ok;
}

std::vector<WitnessFile> witness_files(const fs::path& p)
{
    if (fs::is_directory(p))
        return load_witness_dir(p);
    return {load_witness(p)};
}

int cmd_verify_degeneration(const Options& o, std::ostream& out)
{
    if (o.positional.empty())
        throw InputError("verify-degeneration takes witness files or directories");
    std::vector<WitnessFile> files;
    for (auto& p : o.positional)
        for (auto& w : witness_files(locate(o, p)))
            files.push_back(w);
    json results = json::array();
    bool ok = verify_files(o, files, out, results);
    if (o.json)
        emit(out, {{"ok", ok}, {"results", results}});
    return ok ? 0 : 1;
}

json row_check_json(const RowCheck& c)
{
    return {{"row", c.row->row},
            {"file", c.row->path},
            {"self_consistent", c.self_consistent},
            {"inconsistent_sources", c.inconsistent_sources},
            {"stability_trials", c.stability_trials},
            {"violations", c.violations},
            {"first_violation", c.first_violation},
            {"searches", c.searches},
            {"refuted", c.refuted},
            {"ok", c.ok()}};
}

void print_row_check(const RowCheck& c, int search_trials, std::ostream& out)
{
    out << (c.ok() ? "ok    " : "FAIL  ") << c.row->row << "\n";
    out << "      self-consistent: " << (c.self_consistent ? "yes" : "no");
    for (auto& s : c.inconsistent_sources)
        out << " (" << s << " not in R)";
    out << "\n      stability: " << c.violations << " violations in " << c.stability_trials << " trials";
    if (!c.first_violation.empty())
        out << " (" << c.first_violation << ")";
    out << "\n      orbit search: " << c.searches << " targets x " << search_trials << " trials, "
        << c.refuted.size() << " witnesses\n";
    for (auto& r : c.refuted)
        out << "      refuted: " << r << "\n";
}

bool check_rows(const Options& o, const std::vector<SeparatingRow>& rows, std::ostream& out, json& results)
{
    bool ok = true;
    for (auto& row : rows) {
        auto c = check_row(row, o.stability_trials, o.trials, o.seed);
        ok = ok && c.ok();
        results.push_back(row_check_json(c));
        if (!o.json)
            print_row_check(c, o.trials, out);
    }
    return ok;
}

int cmd_verify_nondegeneration(const Options& o, std::ostream& out)
{
    if (o.positional.size() == 2 && o.positional[0].find(".json") == std::string::npos) {
        auto rep = check_necessary_conditions(load_algebra(o, o.positional[0]), load_algebra(o, o.positional[1]));
        bool excluded = !rep.all_pass();
        if (o.json) {
            emit(out, {{"non_degeneration", excluded}, {"tier", "corollary"}, {"conditions", necessary_to_json(rep)}});
        } else {
            for (size_t i = 0; i < rep.conditions.size(); ++i) {
                auto& c = rep.conditions[i];
                out << i + 1 << ". " << std::left << std::setw(22) << c.name << c.source << " vs " << c.target
                    << (c.pass ? "" : "  fails") << "\n";
            }
            out << (excluded ? "NON-DEGENERATION (corollary)" : "not excluded by the invariants") << "\n";
        }
        return excluded ? 0 : 1;
    }
    if (o.positional.empty())
        throw InputError("verify-nondegeneration takes separating row files or two algebras");
    std::vector<SeparatingRow> rows;
    for (auto& p : o.positional) {
        auto path = locate(o, p);
        if (fs::is_directory(path))
            for (auto& r : load_separating_dir(path))
                rows.push_back(r);
        else
            rows.push_back(load_separating_row(path));
    }
    json results = json::array();
    bool ok = check_rows(o, rows, out, results);
    if (o.json)
        emit(out, {{"ok", ok}, {"rows", results}});
    return ok ? 0 : 1;
}

DatasetOptions dataset_options(const Options& o)
{
    DatasetOptions d;
    d.data_dir = data_dir(o);
    d.seed = o.seed;
    d.stability_trials = o.stability_trials;
    d.search_trials = std::min(o.trials, 200);
    return d;
}

int cmd_graph(const Options& o, std::ostream& out)
{
    if (o.view != "families" && o.view != "algebras")
        throw InputError("--view must be families or algebras");
    Dataset ds = o.n > 0 ? filiform_dataset(o.n, dataset_options(o))
                         : three_dim_dataset(o.view == "families" ? View::families : View::algebras,
                                             dataset_options(o));
    std::string dot = emit_dot(ds.graph);
    if (!o.out_path.empty()) {
        std::ofstream f(o.out_path);
        if (!f)
            throw InputError("cannot write " + o.out_path);
        f << dot;
    }
    auto certs = certify_maximal(ds.graph);
    if (o.json) {
        json j = graph_to_json(ds.graph);
        j["maximal"] = maximal_nodes(ds.graph);
        j["rejected"] = ds.rejected;
        emit(out, j);
    } else if (o.out_path.empty()) {
        out << dot;
    } else {
        out << "wrote " << o.out_path << "\n";
        for (auto& c : certs)
            out << "maximal " << c.node << (c.certified ? " (certified)" : " (not certified)") << "\n";
    }
    for (auto& r : ds.rejected)
        out << "rejected: " << r << "\n";
    return ds.rejected.empty() ? 0 : 1;
}

int reproduce_witness_section(const Options& o, const std::string& section, std::ostream& out)
{
    json results = json::array();
    bool ok = verify_files(o, load_witness_dir(data_dir(o) / "witnesses" / section), out, results);
    if (o.json)
        emit(out, {{"suite", section}, {"ok", ok}, {"results", results}});
    else
        out << (ok ? "PASS " : "FAIL ") << section << ": " << results.size() << " instances\n";
    return ok ? 0 : 1;
}

int reproduce_rows(const Options& o, const std::string& section, std::ostream& out)
{
    json results = json::array();
    bool ok = check_rows(o, load_separating_dir(data_dir(o) / "separating" / section), out, results);
    if (o.json)
        emit(out, {{"suite", section}, {"ok", ok}, {"rows", results}});
    else
        out << (ok ? "PASS " : "FAIL ") << section << ": " << results.size() << " rows\n";
    return ok ? 0 : 1;
}

// Diff-style comparison: "  " shared, "- " drawn but not computed, "+ " computed but not drawn.
bool report_figure(const Options& o, const DegenerationGraph& g, const FigureReference& fig, int offset,
                   const std::string& label, std::ostream& out, json& results)
{
    auto cmp = compare_with_figure(g, fig, offset);
    auto red = transitive_reduction(g);
    auto maximal = maximal_nodes(g);
    std::set<std::string> want_max(fig.maximal.begin(), fig.maximal.end()),
        got_max(maximal.begin(), maximal.end());
    bool ok = cmp.ok() && want_max == got_max;
    if (o.json) {
        results.push_back({{"figure", label},
                           {"ok", ok},
                           {"missing", cmp.missing},
                           {"extra", cmp.extra},
                           {"redundant_not_implied", cmp.redundant_not_implied},
                           {"level_mismatch", cmp.level_mismatch},
                           {"maximal", maximal}});
        return ok;
    }
    out << "--- " << label << " (drawn)\n+++ " << label << " (computed reduction)\n";
    std::set<std::pair<std::string, std::string>> extra(cmp.extra.begin(), cmp.extra.end());
    for (auto& e : red)
        out << (extra.count(e) ? "+ " : "  ") << e.first << " -> " << e.second << "\n";
    for (auto& e : cmp.missing)
        out << "- " << e.first << " -> " << e.second << "\n";
    for (auto& e : fig.drawn_redundant)
        out << "  " << e.first << " -> " << e.second << "  (drawn, implied by the closure)\n";
    for (auto& e : cmp.redundant_not_implied)
        out << "- " << e.first << " -> " << e.second << "  (drawn, NOT implied)\n";
    for (auto& l : cmp.level_mismatch)
        out << "! level " << l << "\n";
    out << "maximal:";
    for (auto& m : maximal)
        out << " " << m;
    out << (want_max == got_max ? "" : "  (figure: different)") << "\n";
    out << (ok ? "PASS " : "FAIL ") << label << "\n";
    return ok;
}

int reproduce_figure(const Options& o, int which, std::ostream& out)
{
    auto figs = data_dir(o) / "figures";
    json results = json::array();
    bool ok = true;
    if (which == 3) {
        auto fig = load_figure(figs / "figure3.json");
        std::vector<int> ns;
        if (o.n > 0)
            ns.push_back(o.n);
        else
            ns = {4, 5, 6, 7, 8};
        for (int n : ns) {
            auto ds = filiform_dataset(n, dataset_options(o));
            ok = report_figure(o, ds.graph, fig, n * n - n, "figure3 n=" + std::to_string(n), out, results) && ok;
            ok = ok && ds.rejected.empty();
        }
    } else {
        auto ds = three_dim_dataset(which == 1 ? View::algebras : View::families, dataset_options(o));
        auto fig = load_figure(figs / (which == 1 ? "figure1.json" : "figure2.json"));
        ok = report_figure(o, ds.graph, fig, 0, "figure" + std::to_string(which), out, results);
        for (auto& r : ds.rejected)
            out << "rejected: " << r << "\n";
        ok = ok && ds.rejected.empty();
        if (which == 2) {
            for (auto& c : certify_maximal(ds.graph)) {
                ok = ok && c.certified;
                if (!o.json)
                    out << "component " << c.node << (c.certified ? " certified" : " NOT certified") << "\n";
            }
        }
    }
    if (o.json)
        emit(out, {{"ok", ok}, {"figures", results}});
    return ok ? 0 : 1;
}

int cmd_reproduce(const Options& o, std::ostream& out)
{
    if (o.positional.size() != 1)
        throw InputError("reproduce takes one of table1 table2 table3 table5 table6 figure1 figure2 figure3");
    const std::string& what = o.positional.front();
    if (what == "table1") {
        Options q = o;
        q.positional.clear();
        return cmd_invariants(q, out);
    }
    if (what == "table2")
        return reproduce_witness_section(o, "table2", out);
    if (what == "table5")
        return reproduce_witness_section(o, "table5", out);
    if (what == "table3")
        return reproduce_rows(o, "table3", out);
    if (what == "table6")
        return reproduce_rows(o, "table6", out);
    if (what == "figure1")
        return reproduce_figure(o, 1, out);
    if (what == "figure2")
        return reproduce_figure(o, 2, out);
    if (what == "figure3")
        return reproduce_figure(o, 3, out);
    throw InputError("unknown suite '" + what + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Poisson algebra classification and degeneration toolkit", "poisson"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--seed", o.seed, "random seed")->capture_default_str();
    app.add_option("--trials", o.trials, "orbit search trials per target")->capture_default_str();
    app.add_option("--stability-trials", o.stability_trials, "triangular stability trials per set")
        ->capture_default_str();
    app.add_flag("--json", o.json, "JSON output");
    app.add_option("--n", o.n, "dimension for filiform suites");
    app.add_option("--out", o.out_path, "DOT output path");
    app.add_option("--data", o.data, "data directory");
    app.add_option("--view", o.view, "graph view: families or algebras")->capture_default_str();

    struct Sub {
        const char* name;
        const char* help;
        int (*fn)(const Options&, std::ostream&);
    };
    const Sub subs[] = {
        {"catalog", "list families or print algebras by key", cmd_catalog},
        {"check", "identity report for an algebra JSON file or key", cmd_check},
        {"z2", "Leibniz cocycle space of a commutative algebra", cmd_z2},
        {"invariants", "invariant profile; without arguments the dim Der table", cmd_invariants},
        {"verify-degeneration", "verify witness files or directories", cmd_verify_degeneration},
        {"verify-nondegeneration", "check separating rows, or the invariant inequalities for two algebras",
         cmd_verify_nondegeneration},
        {"graph", "degeneration graph as DOT or JSON", cmd_graph},
        {"reproduce", "re-run a table or figure suite", cmd_reproduce},
    };
    for (auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("args", o.positional, "arguments");
        sub->fallthrough();
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    try {
        for (auto& s : subs)
            if (app.got_subcommand(s.name))
                return s.fn(o, out);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        err << "failure: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace poisson
