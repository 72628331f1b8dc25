#include "pk/dsl.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace pk {

bool ReferenceValue::operator==(const ReferenceValue& o) const {
    return kind == o.kind && args == o.args && vector == o.vector && scalar == o.scalar && lambda == o.lambda &&
           mu == o.mu;
}

bool ManifoldDocument::operator==(const ManifoldDocument& o) const {
    return name == o.name && coords == o.coords && frame_names == o.frame_names && frame == o.frame &&
           gram_diag == o.gram_diag && gram == o.gram && phi == o.phi && xi == o.xi && eta == o.eta && n == o.n &&
           references == o.references;
}

namespace {

[[noreturn]] void fail(ErrorKind kind, const Token& at, const std::string& msg) {
    throw ParseError(kind, at.line, at.column, msg);
}

std::string describe(const Token& t) {
    if (t.kind == TokKind::end) return "end of line";
    if (t.kind == TokKind::deriv) return "'d/d" + t.text + "'";
    return "'" + t.text + "'";
}

class DocParser {
public:
    explicit DocParser(std::string_view text) : text_(text) {}

    ManifoldDocument run() {
        std::istringstream in{std::string(text_)};
        std::string raw;
        int lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            last_line_ = lineno;
            toks_ = tokenize(raw, lineno);
            pos_ = 0;
            if (peek().kind == TokKind::end) continue;
            directive();
        }
        finish();
        return std::move(doc_);
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    const Token& expect(TokKind kind, const std::string& what) {
        if (peek().kind != kind) fail(ErrorKind::syntax, peek(), "expected " + what + ", found " + describe(peek()));
        return take();
    }
    void expect_end() {
        if (peek().kind != TokKind::end) fail(ErrorKind::syntax, peek(), "unexpected " + describe(peek()));
    }

    void once(const std::string& section, const Token& at) {
        if (!seen_.emplace(section, at.line).second)
            fail(ErrorKind::semantic, at, "duplicate '" + section + "' section");
    }
    void need_coords(const Token& at) {
        if (!doc_.symbols) fail(ErrorKind::semantic, at, "'coords' must come before '" + at.text + "'");
    }

    std::size_t frame_index(const Token& t) {
        if (t.kind != TokKind::ident) fail(ErrorKind::syntax, t, "expected a frame member, found " + describe(t));
        auto it = std::find(doc_.frame_names.begin(), doc_.frame_names.end(), t.text);
        if (it == doc_.frame_names.end()) fail(ErrorKind::semantic, t, "unknown frame member '" + t.text + "'");
        return static_cast<std::size_t>(it - doc_.frame_names.begin());
    }

    std::optional<Resolved> coord_scalar(const Token& t) const {
        if (t.kind != TokKind::ident) return std::nullopt;
        auto idx = doc_.symbols->find(t.text);
        if (!idx) return std::nullopt;
        return Resolved{ScalarExpr::variable(doc_.symbols, *idx)};
    }

    Combo parse_with(std::size_t basis, const Resolver& resolve) {
        ExprParser p(toks_, pos_, doc_.symbols, basis, resolve);
        Combo c = p.parse_expr();
        pos_ = p.position();
        expect_end();
        return c;
    }

    // Combination over `basis` atoms; a bare 0 is allowed.
    Vec parse_combo(std::size_t basis, const Resolver& resolve, const std::string& what) {
        const Token start = peek();
        Combo c = parse_with(basis, resolve);
        if (!c.scalar.is_zero()) fail(ErrorKind::semantic, start, "expected a combination of " + what);
        return c.parts;
    }

    Vec frame_combo() {
        const std::size_t d = doc_.dimension();
        return parse_combo(d,
                           [this](const Token& t) -> std::optional<Resolved> {
                               if (t.kind == TokKind::ident) {
                                   auto it = std::find(doc_.frame_names.begin(), doc_.frame_names.end(), t.text);
                                   if (it != doc_.frame_names.end())
                                       return Resolved{static_cast<std::size_t>(it - doc_.frame_names.begin())};
                               }
                               return coord_scalar(t);
                           },
                           "frame members");
    }

    ScalarExpr scalar_expr() {
        Combo c = parse_with(0, [this](const Token& t) { return coord_scalar(t); });
        return c.scalar;
    }

    Rational signed_rational() {
        bool neg = false;
        if (peek().kind == TokKind::minus || peek().kind == TokKind::plus) neg = take().kind == TokKind::minus;
        const Token& t = expect(TokKind::number, "a rational number");
        return neg ? Rational(-t.number) : t.number;
    }

    void directive() {
        const Token kw = take();
        if (kw.kind != TokKind::ident) fail(ErrorKind::syntax, kw, "expected a directive, found " + describe(kw));
        const std::string& k = kw.text;
        if (k == "manifold") {
            once(k, kw);
            doc_.name = expect(TokKind::ident, "a manifold name").text;
            expect_end();
        } else if (k == "coords") {
            coords(kw);
        } else if (k == "frame") {
            frame(kw);
        } else if (k == "gram") {
            gram(kw);
        } else if (k == "metric") {
            metric(kw);
        } else if (k == "phi") {
            phi(kw);
        } else if (k == "xi") {
            need_coords(kw);
            once(k, kw);
            expect(TokKind::equals, "'='");
            doc_.xi = frame_combo();
        } else if (k == "eta") {
            eta(kw);
        } else if (k == "n") {
            once(k, kw);
            expect(TokKind::equals, "'='");
            const Token& t = expect(TokKind::number, "an integer");
            if (t.number.get_den() != 1 || t.number <= 0) fail(ErrorKind::semantic, t, "n must be a positive integer");
            doc_.n = static_cast<int>(t.number.get_num().get_si());
            n_token_ = t;
            expect_end();
        } else if (k == "reference") {
            reference(kw);
        } else {
            fail(ErrorKind::syntax, kw, "unknown directive '" + k + "'");
        }
    }

    void coords(const Token& kw) {
        once("coords", kw);
        std::vector<std::string> names;
        while (peek().kind == TokKind::ident) {
            const Token& t = take();
            if (t.text == "exp") fail(ErrorKind::semantic, t, "'exp' is reserved");
            if (std::find(names.begin(), names.end(), t.text) != names.end())
                fail(ErrorKind::semantic, t, "duplicate coordinate '" + t.text + "'");
            names.push_back(t.text);
        }
        if (names.empty()) fail(ErrorKind::syntax, peek(), "expected coordinate names");
        expect_end();
        if (names.size() % 2 == 0)
            fail(ErrorKind::semantic, kw, "dimension must be odd, got " + std::to_string(names.size()));
        doc_.coords = names;
        doc_.symbols = make_symbols(names);
    }

    void frame(const Token& kw) {
        need_coords(kw);
        const Token& name = expect(TokKind::ident, "a frame member name");
        if (std::find(doc_.frame_names.begin(), doc_.frame_names.end(), name.text) != doc_.frame_names.end())
            fail(ErrorKind::semantic, name, "duplicate frame member '" + name.text + "'");
        if (doc_.symbols->find(name.text) || name.text == "exp")
            fail(ErrorKind::semantic, name, "frame member '" + name.text + "' clashes with a coordinate");
        if (doc_.frame_names.size() == doc_.dimension())
            fail(ErrorKind::semantic, name, "more frame members than coordinates");
        expect(TokKind::equals, "'='");
        Vec comps = parse_combo(doc_.dimension(),
                                [this](const Token& t) -> std::optional<Resolved> {
                                    if (t.kind == TokKind::deriv) {
                                        auto idx = doc_.symbols->find(t.text);
                                        if (idx) return Resolved{static_cast<std::size_t>(*idx)};
                                        return std::nullopt;
                                    }
                                    return coord_scalar(t);
                                },
                                "d/d<coord> terms");
        if (frame_lines_.empty()) frame_lines_.push_back(kw);
        doc_.frame_names.push_back(name.text);
        doc_.frame.push_back(std::move(comps));
    }

    void gram(const Token& kw) {
        need_coords(kw);
        once("gram", kw);
        if (seen_.count("metric")) fail(ErrorKind::semantic, kw, "both 'gram' and 'metric' given");
        const Token& diag = expect(TokKind::ident, "'diag'");
        if (diag.text != "diag") fail(ErrorKind::syntax, diag, "expected 'diag', found " + describe(diag));
        const std::size_t d = doc_.dimension();
        std::vector<Rational> entries;
        while (peek().kind != TokKind::end) {
            const Token at = peek();
            Rational q = signed_rational();
            if (q == 0) fail(ErrorKind::semantic, at, "gram entries must be nonzero");
            entries.push_back(q);
        }
        if (entries.size() != d)
            fail(ErrorKind::semantic, kw,
                 "gram diag needs " + std::to_string(d) + " entries, got " + std::to_string(entries.size()));
        doc_.gram_diag = true;
        doc_.gram.assign(d, Vec(d));
        for (std::size_t a = 0; a < d; ++a) doc_.gram[a][a] = ScalarExpr(entries[a]);
    }

    void metric(const Token& kw) {
        need_coords(kw);
        if (seen_.count("gram")) fail(ErrorKind::semantic, kw, "both 'gram' and 'metric' given");
        seen_.emplace("metric", kw.line);
        const std::size_t d = doc_.dimension();
        if (doc_.gram.empty()) doc_.gram.assign(d, Vec(d));
        doc_.gram_diag = false;
        const Token ta = peek();
        std::size_t a = frame_index(take());
        std::size_t b = frame_index(take());
        ScalarExpr v = scalar_expr();
        if (!metric_set_.emplace(std::min(a, b), std::max(a, b)).second)
            fail(ErrorKind::semantic, ta, "duplicate metric entry");
        doc_.gram[a][b] = v;
        doc_.gram[b][a] = v;
    }

    void phi(const Token& kw) {
        need_coords(kw);
        std::size_t a = frame_index(take());
        expect(TokKind::arrow, "'->'");
        if (doc_.phi.empty()) doc_.phi.assign(doc_.dimension(), Vec());
        if (!phi_set_.insert(a).second)
            fail(ErrorKind::semantic, toks_[1], "duplicate phi entry for '" + doc_.frame_names[a] + "'");
        doc_.phi[a] = frame_combo();
        seen_.emplace("phi", kw.line);
    }

    void eta(const Token& kw) {
        need_coords(kw);
        once("eta", kw);
        expect(TokKind::equals, "'='");
        doc_.eta = parse_combo(doc_.dimension(),
                               [this](const Token& t) -> std::optional<Resolved> {
                                   if (t.kind == TokKind::ident && t.text.size() > 1 && t.text[0] == 'd') {
                                       auto idx = doc_.symbols->find(t.text.substr(1));
                                       if (idx && !doc_.symbols->find(t.text))
                                           return Resolved{static_cast<std::size_t>(*idx)};
                                   }
                                   return coord_scalar(t);
                               },
                               "coordinate differentials");
    }

    void reference(const Token& kw) {
        need_coords(kw);
        const Token& what = expect(TokKind::ident, "a reference kind");
        ReferenceValue r;
        r.line = kw.line;
        auto frames = [&](int count) {
            for (int i = 0; i < count; ++i) r.args.push_back(frame_index(take()));
            expect(TokKind::equals, "'='");
        };
        if (what.text == "connection") {
            r.kind = ReferenceValue::Kind::connection;
            frames(2);
            r.vector = frame_combo();
        } else if (what.text == "riemann") {
            r.kind = ReferenceValue::Kind::riemann;
            frames(3);
            r.vector = frame_combo();
        } else if (what.text == "ricci") {
            r.kind = ReferenceValue::Kind::ricci;
            frames(2);
            r.scalar = scalar_expr();
        } else if (what.text == "soliton") {
            r.kind = ReferenceValue::Kind::soliton;
            for (const char* key : {"lambda", "mu"}) {
                const Token& t = expect(TokKind::ident, std::string("'") + key + "'");
                if (t.text != key) fail(ErrorKind::syntax, t, std::string("expected '") + key + "', found " + describe(t));
                expect(TokKind::equals, "'='");
                (std::string(key) == "lambda" ? r.lambda : r.mu) = signed_rational();
            }
            expect_end();
        } else {
            fail(ErrorKind::syntax, what, "unknown reference kind '" + what.text + "'");
        }
        doc_.references.push_back(std::move(r));
    }

    void finish() {
        Token eof;
        eof.line = last_line_ + 1;
        eof.column = 1;
        for (const char* s : {"manifold", "coords", "frame", "gram", "phi", "xi", "n"}) {
            bool present = seen_.count(s) > 0 || (std::string(s) == "frame" && !doc_.frame_names.empty()) ||
                           (std::string(s) == "gram" && seen_.count("metric"));
            if (!present) fail(ErrorKind::semantic, eof, std::string("missing '") + s + "' section");
        }
        const std::size_t d = doc_.dimension();
        if (doc_.frame_names.size() != d)
            fail(ErrorKind::semantic, frame_lines_.front(),
                 "expected " + std::to_string(d) + " frame members, got " + std::to_string(doc_.frame_names.size()));
        for (std::size_t a = 0; a < d; ++a)
            if (!phi_set_.count(a))
                fail(ErrorKind::semantic, eof, "missing phi entry for '" + doc_.frame_names[a] + "'");
        if (2 * doc_.n + 1 != static_cast<int>(d))
            fail(ErrorKind::semantic, n_token_,
                 "n = " + std::to_string(doc_.n) + " does not match dimension " + std::to_string(d));
        try {
            std::vector<VectorField> members;
            for (const Vec& v : doc_.frame) members.push_back(VectorField{v});
            Frame check(Chart(doc_.coords), std::move(members), doc_.gram);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            fail(ErrorKind::semantic, frame_lines_.front(), e.what());
        }
    }

    std::string_view text_;
    ManifoldDocument doc_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int last_line_ = 0;
    std::map<std::string, int> seen_;
    std::set<std::size_t> phi_set_;
    std::set<std::pair<std::size_t, std::size_t>> metric_set_;
    std::vector<Token> frame_lines_;
    Token n_token_;
};

std::vector<std::string> prefixed(const std::vector<std::string>& names, const std::string& prefix) {
    std::vector<std::string> r;
    for (const auto& s : names) r.push_back(prefix + s);
    return r;
}

}  // namespace

ManifoldDocument parse_manifold(std::string_view text) { return DocParser(text).run(); }

std::string print_manifold(const ManifoldDocument& doc) {
    std::ostringstream os;
    const auto& fn = doc.frame_names;
    os << "manifold " << doc.name << "\n";
    os << "coords";
    for (const auto& c : doc.coords) os << " " << c;
    os << "\n";
    auto derivs = prefixed(doc.coords, "d/d");
    for (std::size_t a = 0; a < doc.frame.size(); ++a) os << "frame " << fn[a] << " = " << to_string(doc.frame[a], derivs) << "\n";
    const std::size_t d = doc.dimension();
    if (doc.gram_diag) {
        os << "gram diag";
        for (std::size_t a = 0; a < d; ++a) os << " " << doc.gram[a][a].to_string();
        os << "\n";
    } else {
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a; b < d; ++b)
                if (!doc.gram[a][b].is_zero())
                    os << "metric " << fn[a] << " " << fn[b] << " " << doc.gram[a][b].to_string() << "\n";
    }
    for (std::size_t a = 0; a < doc.phi.size(); ++a) os << "phi " << fn[a] << " -> " << to_string(doc.phi[a], fn) << "\n";
    os << "xi = " << to_string(doc.xi, fn) << "\n";
    if (doc.eta) os << "eta = " << to_string(*doc.eta, prefixed(doc.coords, "d")) << "\n";
    os << "n = " << doc.n << "\n";
    for (const auto& r : doc.references) {
        os << "reference ";
        switch (r.kind) {
            case ReferenceValue::Kind::connection: os << "connection"; break;
            case ReferenceValue::Kind::riemann: os << "riemann"; break;
            case ReferenceValue::Kind::ricci: os << "ricci"; break;
            case ReferenceValue::Kind::soliton: os << "soliton"; break;
        }
        for (std::size_t i : r.args) os << " " << fn[i];
        switch (r.kind) {
            case ReferenceValue::Kind::connection:
            case ReferenceValue::Kind::riemann: os << " = " << to_string(r.vector, fn); break;
            case ReferenceValue::Kind::ricci: os << " = " << r.scalar.to_string(); break;
            case ReferenceValue::Kind::soliton:
                os << " lambda = " << to_string(r.lambda) << " mu = " << to_string(r.mu);
                break;
        }
        os << "\n";
    }
    return os.str();
}

ParacontactStructure build_structure(const ManifoldDocument& doc) {
    const std::size_t d = doc.dimension();
    std::vector<VectorField> members;
    for (const Vec& v : doc.frame) members.push_back(VectorField{v});
    Frame frame(Chart(doc.coords), std::move(members), doc.gram);
    Tensor phi(d, 1, 1);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) phi.at({b, a}) = doc.phi[a][b];
    std::optional<Vec> eta;
    if (doc.eta) {
        // eta(E_a) = sum_i eta_i E_a^i
        Vec e(d);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t i = 0; i < d; ++i)
                if (!(*doc.eta)[i].is_zero()) e[a] += (*doc.eta)[i] * doc.frame[a][i];
        eta = e;
    }
    return make_structure(doc.name, std::move(frame), std::move(phi), doc.xi, eta, doc.n, doc.frame_names);
}

bool SuiteResult::failed() const {
    return std::any_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.status == Status::fail; });
}

const std::vector<std::string>& check_groups() {
    static const std::vector<std::string> groups = {"axioms",     "connection", "para_kenmotsu", "identities",
                                                    "curvature",  "soliton",    "conditions",    "factors",
                                                    "theorems",   "parallel",   "ricci"};
    return groups;
}

namespace {

class SuiteRunner {
public:
    SuiteRunner(const std::set<std::string>& selection, SuiteResult& out) : selection_(selection), out_(out) {}

    bool selected(const std::string& name, const std::string& group) const {
        if (selection_.empty() || selection_.count(group)) return true;
        for (const auto& s : selection_)
            if (name == s || (name.size() > s.size() && name.compare(0, s.size(), s) == 0 && name[s.size()] == '.'))
                return true;
        return false;
    }

    bool ok(const std::string& group) const {
        auto it = ok_.find(group);
        return it != ok_.end() && it->second;
    }

    // Returns the first failed dependency, if any.
    std::optional<std::string> blocked(std::initializer_list<std::string> deps) const {
        for (const auto& d : deps)
            if (!ok(d)) return d;
        return std::nullopt;
    }

    void add(const std::string& group, CheckReport r) {
        auto [it, fresh] = ok_.emplace(group, true);
        (void)fresh;
        it->second = it->second && r.passed();
        if (selected(r.name, group)) out_.checks.push_back(std::move(r));
    }

    void skip(const std::string& group, const std::vector<std::string>& names, const std::string& dep) {
        for (const auto& n : names) {
            CheckReport r;
            r.name = n;
            r.status = Status::skipped;
            r.detail = "dependency failed: " + dep;
            add(group, std::move(r));
        }
        ok_[group] = false;
    }

private:
    const std::set<std::string>& selection_;
    SuiteResult& out_;
    std::map<std::string, bool> ok_;
};

std::string pair_text(const Rational& l, const Rational& m) {
    return "(" + to_string(l) + ", " + to_string(m) + ")";
}

std::vector<CheckReport> factor_checks(int n) {
    std::vector<CheckReport> out;
    for (ConditionKind k : all_condition_kinds) {
        out.push_back(timed([&] {
            CheckReport r;
            r.name = std::string("factor.") + to_string(k);
            try {
                FactorCheck fc = symbolic_factor_check(k, n);
                r.reference = fc.expected.to_string() + " = 0 with lambda = 2n - mu";
                std::string roots;
                for (const auto& [l, m] : fc.pairs) roots += (roots.empty() ? "" : ", ") + pair_text(l, m);
                r.detail = "prefactor " + fc.raw.to_string() + " -> " + fc.reduced.to_string() + "; (lambda, mu) in {" +
                           roots + "}";
                if (!fc.raw_matches()) {
                    r.status = Status::fail;
                    r.witness = "prefactor " + fc.raw.to_string() + " != " + fc.unreduced.to_string();
                } else if (!fc.matches()) {
                    r.status = Status::fail;
                    r.witness = "reduced " + fc.reduced.to_string() + " != " + fc.expected.to_string();
                } else if (!fc.pairs_match()) {
                    r.status = Status::fail;
                    r.witness = "root set differs from the theorem's solution set";
                }
            } catch (const Error& e) {
                r.status = Status::fail;
                r.witness = e.what();
            }
            return r;
        }));
    }
    out.push_back(timed([&] {
        CheckReport r;
        r.name = "factor.no_ricci_soliton";
        r.reference = "mu != 0 in every solution set";
        for (ConditionKind k : all_condition_kinds)
            for (const auto& [l, m] : theorem_expected(k, n))
                if (m == 0 || l + m != Rational(2 * n)) {
                    r.status = Status::fail;
                    r.witness = std::string(to_string(k)) + " admits " + pair_text(l, m);
                }
        return r;
    }));
    return out;
}

}  // namespace

SuiteResult run_factor_suite(int n) {
    SuiteResult out;
    out.manifold = "warped_r" + std::to_string(2 * n + 1);
    out.dimension = static_cast<std::size_t>(2 * n + 1);
    out.n = n;
    out.checks = factor_checks(n);
    return out;
}

SuiteResult run_suite(const ManifoldDocument& doc, const std::set<std::string>& selection) {
    SuiteResult out;
    out.manifold = doc.name;
    out.dimension = doc.dimension();
    out.n = doc.n;
    SuiteRunner run(selection, out);

    ParacontactStructure s = build_structure(doc);
    const auto& names = s.frame_names;
    const std::size_t d = s.dimension();

    for (auto& r : check_axioms(s)) run.add("axioms", std::move(r));

    std::optional<FrameConnection> conn;
    {
        CheckReport r = timed([&] {
            CheckReport c;
            c.name = "connection.koszul";
            c.reference = "2g(nabla_X Y, Z) by the Koszul formula";
            try {
                conn = koszul_connection(s.frame);
            } catch (const Error& e) {
                c.status = Status::fail;
                c.witness = e.what();
            }
            return c;
        });
        run.add("connection", std::move(r));
        if (conn) {
            run.add("connection", timed([&] {
                        return tensor_check("connection.torsion_free", "nabla_X Y - nabla_Y X = [X,Y]",
                                            torsion_residual(s.frame, *conn), names);
                    }));
            run.add("connection", timed([&] {
                        return tensor_check("connection.metric_compatible", "X g(Y,Z) = g(nabla_X Y,Z) + g(Y,nabla_X Z)",
                                            metric_residual(s.frame, *conn), names);
                    }));
        } else {
            run.skip("connection", {"connection.torsion_free", "connection.metric_compatible"}, "connection");
        }
    }

    if (auto dep = run.blocked({"axioms", "connection"})) run.skip("para_kenmotsu", {"para_kenmotsu"}, *dep);
    else run.add("para_kenmotsu", check_para_kenmotsu(s, *conn));

    std::optional<RiemannTensor> R;
    std::optional<RicciTensor> S;
    std::optional<RicciOperator> Q;
    if (conn) {
        R = riemann_unchecked(s.frame, *conn);
        try {
            S = ricci(s.frame, *R);
            Q = ricci_operator(s.frame, *S);
        } catch (const Error&) {
        }
    }

    static const std::vector<std::string> identity_names = {
        "identity.nabla_xi",  "identity.eta_nabla_xi", "identity.nabla_xi_xi", "identity.curvature_xi",
        "identity.eta_curvature", "identity.eta_curvature_xi", "identity.nabla_eta", "identity.nabla_xi_eta",
        "identity.lie_phi",   "identity.lie_eta",      "identity.lie_eta_eta", "identity.lie_g",
        "identity.d_eta",     "identity.nijenhuis"};
    if (auto dep = run.blocked({"para_kenmotsu"})) run.skip("identities", identity_names, *dep);
    else
        for (auto& r : identity_suite(s, *conn, *R)) run.add("identities", std::move(r));

    if (auto dep = run.blocked({"connection"})) {
        run.skip("curvature",
                 {"curvature.antisymmetry", "curvature.bianchi", "curvature.pair_symmetry", "curvature.ricci_symmetric",
                  "curvature.ricci_xi", "curvature.ricci_operator_xi"},
                 *dep);
    } else {
        run.add("curvature", timed([&] {
                    return tensor_check("curvature.antisymmetry", "R(X,Y)Z = -R(Y,X)Z", antisymmetry_residual(*R), names);
                }));
        run.add("curvature", timed([&] {
                    return tensor_check("curvature.bianchi", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", bianchi_residual(*R),
                                        names);
                }));
        run.add("curvature", timed([&] {
                    return tensor_check("curvature.pair_symmetry", "g(R(X,Y)Z,W) = g(R(Z,W)X,Y)",
                                        pair_symmetry_residual(s.frame, *R), names);
                }));
        if (!S) {
            CheckReport r;
            r.name = "curvature.ricci_symmetric";
            r.status = Status::fail;
            r.witness = "Ricci tensor needs a constant diagonal gram";
            run.add("curvature", r);
            run.skip("curvature", {"curvature.ricci_xi", "curvature.ricci_operator_xi"}, "curvature");
        } else {
            run.add("curvature", timed([&] {
                        Tensor t(d, 0, 2);
                        for (std::size_t a = 0; a < d; ++a)
                            for (std::size_t b = 0; b < d; ++b) t.at({a, b}) = S->at({a, b}) - S->at({b, a});
                        return tensor_check("curvature.ricci_symmetric", "S(X,Y) = S(Y,X)", t, names);
                    }));
            if (auto dep2 = run.blocked({"para_kenmotsu"})) {
                run.skip("curvature", {"curvature.ricci_xi", "curvature.ricci_operator_xi"}, *dep2);
            } else {
                run.add("curvature", timed([&] {
                            Tensor t(d, 0, 1);
                            for (std::size_t a = 0; a < d; ++a)
                                t.at({a}) = S->scalar({s.e(a), s.xi}) + s.eta[a].scaled(2 * s.n);
                            return tensor_check("curvature.ricci_xi", "S(X, xi) = -2n eta(X)", t, names);
                        }));
                run.add("curvature", timed([&] {
                            Vec v = Q->vector({s.xi}) + ScalarExpr(2 * s.n) * s.xi;
                            CheckReport r;
                            r.name = "curvature.ricci_operator_xi";
                            r.reference = "Q xi = -2n xi";
                            if (!is_zero(v)) {
                                r.status = Status::fail;
                                r.witness = to_string(v, names);
                            }
                            return r;
                        }));
            }
        }
    }

    static const std::vector<std::string> soliton_names = {"soliton.solve", "soliton.sum_rule",
                                                           "soliton.quasi_einstein"};
    if (auto dep = run.blocked({"para_kenmotsu", "curvature"})) {
        run.skip("soliton", soliton_names, *dep);
    } else {
        run.add("soliton", timed([&] {
                    CheckReport r;
                    r.name = "soliton.solve";
                    r.reference = "L_xi g + 2S + 2 lambda g + 2 mu eta (x) eta = 0";
                    try {
                        out.soliton = solve_soliton(s, *S);
                        r.detail = "(lambda, mu) = " + pair_text(out.soliton->lambda, out.soliton->mu) + ", " +
                                   to_string(out.soliton->classification);
                    } catch (const NoConstantSolution& e) {
                        r.status = Status::fail;
                        r.witness = e.witness();
                    }
                    return r;
                }));
        if (!out.soliton) {
            run.skip("soliton", {"soliton.sum_rule", "soliton.quasi_einstein"}, "soliton.solve");
        } else {
            const SolitonSolution& sol = *out.soliton;
            run.add("soliton", timed([&] {
                        CheckReport r;
                        r.name = "soliton.sum_rule";
                        r.reference = "lambda + mu = 2n";
                        if (!sol.sum_rule()) {
                            r.status = Status::fail;
                            r.witness = "lambda + mu = " + to_string(sol.lambda + sol.mu);
                        }
                        return r;
                    }));
            run.add("soliton", timed([&] {
                        CheckReport r;
                        r.name = "soliton.quasi_einstein";
                        r.reference = "S = -(lambda+1) g - (mu-1) eta (x) eta";
                        try {
                            SpanCoefficients c = quasi_einstein_decompose(s, *S);
                            r.detail = "(a, b) = " + pair_text(c.a, c.b);
                            if (c.a != -(sol.lambda + 1) || c.b != -(sol.mu - 1)) {
                                r.status = Status::fail;
                                r.witness = "(a, b) = " + pair_text(c.a, c.b);
                            }
                        } catch (const NotInSpan& e) {
                            r.status = Status::fail;
                            r.witness = e.witness();
                        }
                        return r;
                    }));
        }
    }

    std::vector<std::string> condition_names;
    for (ConditionKind k : all_condition_kinds) condition_names.push_back(std::string("condition.") + to_string(k));
    if (auto dep = run.blocked({"soliton"})) {
        run.skip("conditions", condition_names, *dep);
    } else {
        W2Tensor W = w2(s.frame, *R, *Q, s.n);
        for (ConditionKind k : all_condition_kinds) {
            run.add("conditions", timed([&] {
                        CheckReport r;
                        r.name = std::string("condition.") + to_string(k);
                        r.reference = std::string(to_string(k)) + " = 0 => (lambda, mu) in the theorem's solution set";
                        Tensor full = condition_residual(k, s, *R, *S, W);
                        auto wf = first_nonzero(full);
                        if (full.up() == 1) {
                            auto wc = first_nonzero(contracted_condition_residual(k, s, *R, *S, W));
                            if (wf.has_value() != wc.has_value()) {
                                r.status = Status::fail;
                                r.witness = "full and eta-contracted residuals disagree";
                                return r;
                            }
                        }
                        if (wf) {
                            r.detail = "condition does not hold (" + wf->describe(names) + "); hypothesis not met";
                            return r;
                        }
                        const SolitonSolution& sol = *out.soliton;
                        auto expected = theorem_expected(k, s.n);
                        bool member = std::find(expected.begin(), expected.end(), std::make_pair(sol.lambda, sol.mu)) !=
                                      expected.end();
                        r.detail = "condition holds; (lambda, mu) = " + pair_text(sol.lambda, sol.mu);
                        if (!member) {
                            r.status = Status::fail;
                            r.witness = "(lambda, mu) = " + pair_text(sol.lambda, sol.mu) + " outside the solution set";
                        }
                        return r;
                    }));
        }
    }

    for (auto& r : factor_checks(s.n)) run.add("factors", std::move(r));

    if (auto dep = run.blocked({"connection"}); dep || !S) {
        run.skip("theorems", {"theorem.parallel_alpha", "theorem.parallel_alpha.mu=0"}, dep ? *dep : "curvature");
    } else {
        run.add("theorems", parallel_alpha_check(s, *conn, *S).report);
        run.add("theorems", parallel_alpha_check(s, *conn, *S, Rational(0)).report);
    }

    if (auto dep = run.blocked({"para_kenmotsu"})) {
        run.skip("parallel", {"parallel.metric", "parallel.eta_eta"}, *dep);
    } else {
        run.add("parallel", timed([&] {
                    CheckReport r;
                    r.name = "parallel.metric";
                    r.reference = "parallel symmetric alpha = alpha(xi,xi) g; alpha = g gives 1";
                    try {
                        Rational c = parallel_tensor_classify(s.g, *conn, s);
                        if (c != 1) {
                            r.status = Status::fail;
                            r.witness = "c = " + to_string(c);
                        }
                    } catch (const Error& e) {
                        r.status = Status::fail;
                        r.witness = e.what();
                    }
                    return r;
                }));
        run.add("parallel", timed([&] {
                    CheckReport r;
                    r.name = "parallel.eta_eta";
                    r.reference = "(nabla_X (eta (x) eta))(Y, xi) = g(X,Y) - eta(X) eta(Y)";
                    try {
                        parallel_tensor_classify(s.eta_eta(), *conn, s);
                        r.status = Status::fail;
                        r.witness = "eta (x) eta classified as parallel";
                    } catch (const NotParallel& e) {
                        Tensor slice(d, 0, 2);
                        for (std::size_t x = 0; x < d; ++x)
                            for (std::size_t y = 0; y < d; ++y) {
                                ScalarExpr v;
                                for (std::size_t z = 0; z < d; ++z)
                                    if (!s.xi[z].is_zero()) v += s.xi[z] * e.residual().at({x, y, z});
                                slice.at({x, y}) = v - s.g.at({x, y}) + s.eta[x] * s.eta[y];
                            }
                        r.detail = "not parallel: " + e.witness();
                        if (auto w = first_nonzero(slice)) {
                            r.status = Status::fail;
                            r.witness = w->describe(names);
                        }
                    } catch (const Error& e) {
                        r.status = Status::fail;
                        r.witness = e.what();
                    }
                    return r;
                }));
    }

    if (auto dep = run.blocked({"soliton"})) {
        run.skip("ricci",
                 {"ricci.xi_parallel_operator", "ricci.xi_parallel_tensor", "ricci.commutes_phi", "ricci.phi_symmetric",
                  "ricci.phi_symmetric_factor"},
                 *dep);
    } else {
        for (auto& r : phi_ricci_symmetric_check(s, *conn, *S, *Q, out.soliton)) run.add("ricci", std::move(r));
    }

    // Reference comparisons.
    for (const auto& ref : doc.references) {
        Note note;
        switch (ref.kind) {
            case ReferenceValue::Kind::connection: {
                note.item = "nabla_" + names[ref.args[0]] + " " + names[ref.args[1]];
                note.reference = to_string(ref.vector, names);
                if (conn) {
                    const Vec& v = conn->gamma(ref.args[0], ref.args[1]);
                    note.computed = to_string(v, names);
                    note.agrees = v == ref.vector;
                }
                break;
            }
            case ReferenceValue::Kind::riemann: {
                note.item = "R(" + names[ref.args[0]] + "," + names[ref.args[1]] + ")" + names[ref.args[2]];
                note.reference = to_string(ref.vector, names);
                if (R) {
                    Vec v = R->vector({s.e(ref.args[0]), s.e(ref.args[1]), s.e(ref.args[2])});
                    note.computed = to_string(v, names);
                    note.agrees = v == ref.vector;
                }
                break;
            }
            case ReferenceValue::Kind::ricci: {
                note.item = "S(" + names[ref.args[0]] + "," + names[ref.args[1]] + ")";
                note.reference = ref.scalar.to_string();
                if (S) {
                    const ScalarExpr& v = S->at({ref.args[0], ref.args[1]});
                    note.computed = v.to_string();
                    note.agrees = v == ref.scalar;
                }
                break;
            }
            case ReferenceValue::Kind::soliton: {
                note.item = "soliton (lambda, mu)";
                note.reference = pair_text(ref.lambda, ref.mu);
                if (out.soliton) {
                    note.computed = pair_text(out.soliton->lambda, out.soliton->mu);
                    note.agrees = out.soliton->lambda == ref.lambda && out.soliton->mu == ref.mu;
                }
                break;
            }
        }
        if (note.computed.empty()) note.computed = "unavailable";
        out.notes.push_back(std::move(note));
    }
    return out;
}

std::string emit_report(const SuiteResult& result, ReportFormat format) {
    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const auto& c : result.checks) {
        if (c.status == Status::pass) ++passed;
        else if (c.status == Status::fail) ++failed;
        else ++skipped;
    }
    if (format == ReportFormat::json) {
        using nlohmann::ordered_json;
        ordered_json j;
        j["manifold"] = result.manifold;
        j["dimension"] = result.dimension;
        j["n"] = result.n;
        ordered_json checks = ordered_json::array();
        for (const auto& c : result.checks) {
            ordered_json e;
            e["name"] = c.name;
            e["status"] = c.status == Status::pass ? "pass" : c.status == Status::fail ? "fail" : "skipped";
            e["reference"] = c.reference;
            if (!c.witness.empty()) e["witness"] = c.witness;
            if (!c.detail.empty()) e["detail"] = c.detail;
            checks.push_back(std::move(e));
        }
        j["checks"] = std::move(checks);
        if (result.soliton) {
            j["soliton"] = {{"lambda", to_string(result.soliton->lambda)},
                            {"mu", to_string(result.soliton->mu)},
                            {"classification", to_string(result.soliton->classification)}};
        } else {
            j["soliton"] = nullptr;
        }
        ordered_json notes = ordered_json::array();
        for (const auto& n : result.notes)
            notes.push_back({{"item", n.item}, {"computed", n.computed}, {"reference", n.reference}, {"agrees", n.agrees}});
        j["notes"] = std::move(notes);
        j["summary"] = {{"passed", passed}, {"failed", failed}, {"skipped", skipped}};
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "manifold " << result.manifold << " (dimension " << result.dimension << ", n = " << result.n << ")\n";
    for (const auto& c : result.checks) {
        os << (c.status == Status::pass ? "PASS " : c.status == Status::fail ? "FAIL " : "SKIP ") << c.name;
        if (!c.reference.empty()) os << "  [" << c.reference << "]";
        os << "\n";
        if (!c.witness.empty()) os << "     witness: " << c.witness << "\n";
        if (!c.detail.empty()) os << "     " << c.detail << "\n";
    }
    if (result.soliton)
        os << "soliton: lambda = " << to_string(result.soliton->lambda) << ", mu = " << to_string(result.soliton->mu)
           << " (" << to_string(result.soliton->classification) << ")\n";
    for (const auto& n : result.notes)
        os << "note: " << n.item << " computed " << n.computed << ", reference " << n.reference
           << (n.agrees ? " (agrees)" : " (conflict)") << "\n";
    os << "summary: " << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    return os.str();
}

}  // namespace pk
