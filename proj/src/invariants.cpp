#include "poisson/invariants.hpp"
#include "poisson/ratfunc.hpp"

#include <sstream>

namespace poisson {

namespace {

using Vec = std::vector<Rational>;

// Residual of phi(x o y) - phi(x) o y - x o phi(y) over basis pairs, for both products.
Vec derivation_residual(const detail::ProductTable<Rational>& D, const detail::ProductTable<Rational>& B,
                        const Matrix<Rational>& phi)
{
    int n = D.n;
    Vec out;
    std::vector<Vec> img;
    for (int i = 0; i < n; ++i)
        img.push_back(phi.column(i));
    for (const auto* T : {&D, &B})
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Vec l = phi * T->basis(i, j);
                Vec r1 = T->mul(img[static_cast<size_t>(i)], detail::unit<Rational>(n, j));
                Vec r2 = T->mul(detail::unit<Rational>(n, i), img[static_cast<size_t>(j)]);
                for (int k = 0; k < n; ++k)
                    out.push_back(l[static_cast<size_t>(k)] - r1[static_cast<size_t>(k)] - r2[static_cast<size_t>(k)]);
            }
    return out;
}

// x in Ann iff x o e_j = 0 for all j: stacked left-multiplication operators.
int annihilator_dim(const std::vector<const StructureConstants<Rational>*>& ms, int n)
{
    int rows = static_cast<int>(ms.size()) * n * n;
    Matrix<Rational> a(rows, n);
    int r = 0;
    for (auto* m : ms)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k, ++r)
                for (int i = 1; i <= n; ++i)
                    a(r, i - 1) = m->get(i, j, k);
    return n - a.rank();
}

// dim of the span of all basis products.
int square_dim(const std::vector<const StructureConstants<Rational>*>& ms, int n)
{
    std::vector<Vec> vs;
    for (auto* m : ms)
        for (auto& [key, v] : m->entries()) {
            (void)v;
            vs.push_back(m->basis_product(key[0], key[1]));
        }
    if (vs.empty())
        return 0;
    Matrix<Rational> a(static_cast<int>(vs.size()), n);
    for (size_t r = 0; r < vs.size(); ++r)
        for (int k = 0; k < n; ++k)
            a(static_cast<int>(r), k) = vs[r][static_cast<size_t>(k)];
    return a.rank();
}

}  // namespace

std::vector<Matrix<Rational>> derivation_space(const BilinearPair<Rational>& p)
{
    int n = p.dim();
    detail::ProductTable<Rational> D(p.dot), B(p.bracket);
    int vars = n * n;
    std::vector<Vec> cols;
    for (int v = 0; v < vars; ++v) {
        Matrix<Rational> u(n, n);
        u(v / n, v % n) = Rational(1);
        cols.push_back(derivation_residual(D, B, u));
    }
    int rows = static_cast<int>(cols[0].size());
    Matrix<Rational> a(rows, vars);
    for (int v = 0; v < vars; ++v)
        for (int r = 0; r < rows; ++r)
            a(r, v) = cols[static_cast<size_t>(v)][static_cast<size_t>(r)];
    std::vector<Matrix<Rational>> out;
    for (auto& b : solve_nullspace(a)) {
        Matrix<Rational> m(n, n);
        for (int v = 0; v < vars; ++v)
            m(v / n, v % n) = b[static_cast<size_t>(v)];
        out.push_back(std::move(m));
    }
    return out;
}

bool is_derivation(const BilinearPair<Rational>& p, const Matrix<Rational>& phi)
{
    detail::ProductTable<Rational> D(p.dot), B(p.bracket);
    return detail::is_zero_vec(derivation_residual(D, B, phi));
}

InvariantProfile invariant_profile(const BilinearPair<Rational>& p)
{
    int n = p.dim();
    InvariantProfile r;
    r.dim_der = static_cast<int>(derivation_space(p).size());
    r.orbit_dim = n * n - r.dim_der;
    r.ann_dot = annihilator_dim({&p.dot}, n);
    r.ann_bracket = annihilator_dim({&p.bracket}, n);
    r.ann_joint = annihilator_dim({&p.dot, &p.bracket}, n);
    r.dim_dot_square = square_dim({&p.dot}, n);
    r.dim_bracket_square = square_dim({&p.bracket}, n);
    r.dim_p_square = square_dim({&p.dot, &p.bracket}, n);
    return r;
}

bool NecessaryReport::all_pass() const
{
    for (auto& c : conditions)
        if (!c.pass)
            return false;
    return true;
}

std::vector<int> NecessaryReport::failing() const
{
    std::vector<int> out;
    for (size_t i = 0; i < conditions.size(); ++i)
        if (!conditions[i].pass)
            out.push_back(static_cast<int>(i) + 1);
    return out;
}

NecessaryReport check_necessary_conditions(const InvariantProfile& s, const InvariantProfile& t)
{
    NecessaryReport r;
    auto le = [](std::string name, int a, int b) { return NecessaryCondition{std::move(name), a, b, a <= b}; };
    auto ge = [](std::string name, int a, int b) { return NecessaryCondition{std::move(name), a, b, a >= b}; };
    r.conditions[0] = le("ann_dot <=", s.ann_dot, t.ann_dot);
    r.conditions[1] = le("ann_bracket <=", s.ann_bracket, t.ann_bracket);
    r.conditions[2] = le("ann_joint <=", s.ann_joint, t.ann_joint);
    r.conditions[3] = ge("dim_dot_square >=", s.dim_dot_square, t.dim_dot_square);
    r.conditions[4] = ge("dim_bracket_square >=", s.dim_bracket_square, t.dim_bracket_square);
    r.conditions[5] = ge("dim_p_square >=", s.dim_p_square, t.dim_p_square);
    return r;
}

NecessaryReport check_necessary_conditions(const BilinearPair<Rational>& source, const BilinearPair<Rational>& target)
{
    if (source.dim() != target.dim())
        throw DimensionMismatch("degeneration between algebras of different dimension");
    return check_necessary_conditions(invariant_profile(source), invariant_profile(target));
}

json profile_to_json(const InvariantProfile& p)
{
    return {{"dim_der", p.dim_der},
            {"orbit_dim", p.orbit_dim},
            {"ann_dot", p.ann_dot},
            {"ann_bracket", p.ann_bracket},
            {"ann_joint", p.ann_joint},
            {"dim_dot_square", p.dim_dot_square},
            {"dim_bracket_square", p.dim_bracket_square},
            {"dim_p_square", p.dim_p_square}};
}

json necessary_to_json(const NecessaryReport& r)
{
    json c = json::array();
    for (auto& x : r.conditions)
        c.push_back({{"condition", x.name}, {"source", x.source}, {"target", x.target}, {"pass", x.pass}});
    return {{"conditions", c}, {"all_pass", r.all_pass()}};
}

std::vector<Table1Check> check_table1()
{
    std::vector<Table1Check> out;
    for (const auto& row : table1_rows()) {
        Table1Check c;
        c.row = &row;
        std::vector<Rational> alphas = row.alphas.empty() ? std::vector<Rational>{Rational(0)} : row.alphas;
        for (auto& a : alphas) {
            CatalogKey k = row.key;
            if (!row.alphas.empty())
                k.params["alpha"] = a;
            int d = static_cast<int>(derivation_space(build(k)).size());
            c.computed.emplace_back(a, d);
            if (d != row.dim_der)
                c.dim_der_ok = false;
        }
        std::vector<Rational> la = row.label_alphas.empty() ? std::vector<Rational>{Rational(0)} : row.label_alphas;
        for (auto& a : la) {
            CatalogKey k = row.key;
            if (!row.label_alphas.empty())
                k.params["alpha"] = a;
            auto p = build(k);
            BilinearPair<Rational> br(StructureConstants<Rational>(3, Symmetry::symmetric), p.bracket);
            auto moved = apply_basis_change(row.bracket_basis(a).inverse(), br);
            if (!(p.dot == build(row.dot_key(a)).dot) || !(moved.bracket == build(row.bracket_key(a)).bracket))
                c.labels_ok = false;
        }
        c.profile = invariant_profile(build(row.key));
        out.push_back(std::move(c));
    }
    return out;
}

std::string table1_text(const std::vector<Table1Check>& rows)
{
    std::ostringstream os;
    auto pad = [](std::string s, size_t w) {
        if (s.size() < w)
            s += std::string(w - s.size(), ' ');
        return s;
    };
    os << pad("algebra", 17) << pad("multiplication table", 52) << pad("dim Der", 9) << pad("(P,.)", 7)
       << pad("(P,{-,-})", 12) << "check\n";
    for (auto& c : rows) {
        std::string dd = std::to_string(c.computed.front().second);
        bool ok = c.dim_der_ok && c.labels_ok;
        std::string table = table_str(build(c.row->key));
        if (c.row->alphas.size() > 1) {
            // Parametric row: print the table with alpha symbolic.
            table = table_str(build_raw<RatFunc<Rational>>(c.row->key.family, 3, RatFunc<Rational>::t()));
            for (size_t at = table.find('t'); at != std::string::npos; at = table.find('t', at + 5))
                table.replace(at, 1, "alpha");
        }
        os << pad(c.row->label, 17) << pad(table, 52) << pad(dd, 9)
           << pad(c.row->dot_name, 7) << pad(c.row->bracket_name, 12) << (ok ? "ok" : "MISMATCH");
        if (!c.dim_der_ok)
            os << " (paper " << c.row->dim_der << ")";
        os << "\n";
    }
    return os.str();
}

json table1_json(const std::vector<Table1Check>& rows)
{
    json out = json::array();
    for (auto& c : rows) {
        json comp = json::array();
        for (auto& [a, d] : c.computed)
            comp.push_back({{"alpha", a.str()}, {"dim_der", d}});
        out.push_back({{"label", c.row->label},
                       {"key", c.row->key.str()},
                       {"table", table_str(build(c.row->key))},
                       {"dim_der_paper", c.row->dim_der},
                       {"dim_der_computed", comp},
                       {"dot", c.row->dot_name},
                       {"bracket", c.row->bracket_name},
                       {"dim_der_ok", c.dim_der_ok},
                       {"labels_ok", c.labels_ok},
                       {"profile", profile_to_json(c.profile)}});
    }
    return out;
}

}  // namespace poisson
