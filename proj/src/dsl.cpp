#include "weakval/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

#include "weakval/scenarios.hpp"

namespace weakval::dsl {

namespace {

constexpr int kWksVersion = 1;
constexpr double kBsGateTol = 1e-6;

bool is_word_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_number_start(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-';
}

/// Single-line scanner with 1-based column reporting.
struct Cursor {
    std::string_view text;
    int line_no;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) {
            ++pos;
        }
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    int column() const { return static_cast<int>(pos) + 1; }

    [[noreturn]] void fail(std::string message, std::string offending = {}) const {
        fail_at(column(), std::move(message), std::move(offending));
    }

    [[noreturn]] void fail_at(int col, std::string message, std::string offending = {}) const {
        if (offending.empty()) {
            offending = std::string(text.substr(std::min(pos, text.size())));
            if (offending.empty()) {
                offending = "<end of line>";
            }
        }
        throw ParseError(line_no, col, std::move(message), std::move(offending));
    }

    std::string word(const char* what) {
        skip_ws();
        if (!is_word_start(peek())) {
            fail(std::string("expected ") + what);
        }
        const std::size_t start = pos;
        while (pos < text.size() && is_word_char(text[pos])) {
            ++pos;
        }
        return std::string(text.substr(start, pos - start));
    }

    void expect(char c, const char* what) {
        skip_ws();
        if (peek() != c) {
            fail(std::string("expected '") + what + "'");
        }
        ++pos;
    }

    void expect_arrow() {
        skip_ws();
        if (pos + 1 >= text.size() || text[pos] != '-' || text[pos + 1] != '>') {
            fail("expected '->'");
        }
        pos += 2;
    }

    void keyword(const char* kw) {
        const int col = column();
        const std::string w = word(("keyword '" + std::string(kw) + "'").c_str());
        if (w != kw) {
            fail_at(col, "expected keyword '" + std::string(kw) + "'", w);
        }
    }

    double signed_number() {
        skip_ws();
        const int col = column();
        double sign = 1.0;
        if (peek() == '+') {
            ++pos;
        } else if (peek() == '-') {
            sign = -1.0;
            ++pos;
        }
        if (!(std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
            fail_at(col, "expected a number");
        }
        double value = 0.0;
        const char* begin = text.data() + pos;
        const char* end = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{}) {
            fail_at(col, "malformed number", std::string(text.substr(pos, 8)));
        }
        pos = static_cast<std::size_t>(ptr - text.data());
        return sign * value;
    }

    /// `a`, `ai` or `a±bi` with no internal whitespace.
    Complex coefficient() {
        skip_ws();
        const int col = column();
        const std::size_t start = pos;
        const double first = signed_number();
        if (peek() == 'i') {
            ++pos;
            return Complex(0.0, first);
        }
        if (peek() == '+' || peek() == '-') {
            const double second = signed_number();
            if (peek() != 'i') {
                fail_at(col, "malformed complex literal",
                        std::string(text.substr(start, pos - start)));
            }
            ++pos;
            return Complex(first, second);
        }
        return Complex(first, 0.0);
    }
};

/// Name tables built while parsing so every reference and every basis
/// compatibility condition is checked with a line/column at hand.
struct SymbolTables {
    std::map<std::string, std::vector<std::string>> bases; // name → labels
    std::map<std::string, std::string> kets;               // name → basis name
    std::map<std::string, std::string> ops;                // name → basis name
    std::map<std::string, std::pair<std::string, std::string>> unitaries;

    int basis_dim(const std::string& name) const {
        return static_cast<int>(bases.at(name).size());
    }
};

BasisDecl parse_basis(Cursor& cur, SymbolTables& tab) {
    const int name_col = cur.column();
    BasisDecl decl;
    decl.name = cur.word("a basis name");
    if (tab.bases.count(decl.name)) {
        cur.fail_at(name_col, "redeclaration of basis '" + decl.name + "'", decl.name);
    }
    while (!cur.at_end()) {
        const int col = cur.column();
        std::string label = cur.word("a basis label");
        if (std::find(decl.labels.begin(), decl.labels.end(), label) != decl.labels.end()) {
            cur.fail_at(col, "duplicate basis label", label);
        }
        decl.labels.push_back(std::move(label));
    }
    if (decl.labels.empty()) {
        cur.fail("basis needs at least one label");
    }
    tab.bases[decl.name] = decl.labels;
    return decl;
}

KetDecl parse_ket(Cursor& cur, SymbolTables& tab) {
    const int name_col = cur.column();
    KetDecl decl;
    decl.name = cur.word("a ket name");
    if (tab.kets.count(decl.name)) {
        cur.fail_at(name_col, "redeclaration of ket '" + decl.name + "'", decl.name);
    }
    cur.expect(':', ":");
    const int basis_col = cur.column();
    decl.basis = cur.word("a basis name");
    auto basis_it = tab.bases.find(decl.basis);
    if (basis_it == tab.bases.end()) {
        cur.fail_at(basis_col, "undeclared basis '" + decl.basis + "'", decl.basis);
    }
    const auto& labels = basis_it->second;
    cur.expect('=', "=");

    double norm2 = 0.0;
    bool first = true;
    while (true) {
        Complex coef;
        if (first) {
            coef = cur.coefficient();
            first = false;
        } else {
            cur.skip_ws();
            const char conn = cur.peek();
            if (conn != '+' && conn != '-') {
                cur.fail("expected '+' or '-' between ket terms");
            }
            ++cur.pos;
            coef = cur.coefficient();
            if (conn == '-') {
                coef = -coef;
            }
        }
        cur.expect('|', "|");
        const int label_col = cur.column();
        std::string label = cur.word("a basis label");
        if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
            cur.fail_at(label_col, "undeclared label '" + label + "' in basis " + decl.basis,
                        label);
        }
        cur.expect('>', ">");
        norm2 += std::norm(coef);
        decl.terms.push_back({coef, std::move(label)});
        if (cur.at_end()) {
            break;
        }
    }
    if (norm2 < kOrthogonalEps * kOrthogonalEps) {
        cur.fail_at(1, "ket '" + decl.name + "' has zero norm", decl.name);
    }
    tab.kets[decl.name] = decl.basis;
    return decl;
}

OpDecl parse_op(Cursor& cur, SymbolTables& tab) {
    const int name_col = cur.column();
    OpDecl decl;
    decl.name = cur.word("an operator name");
    if (tab.ops.count(decl.name)) {
        cur.fail_at(name_col, "redeclaration of op '" + decl.name + "'", decl.name);
    }
    cur.expect('=', "=");
    cur.skip_ws();

    std::string op_basis;
    if (is_word_start(cur.peek())) {
        const int head_col = cur.column();
        const std::string head = cur.word("'proj' or an operator name");
        if (head == "proj") {
            const int ref_col = cur.column();
            ProjOp proj;
            proj.source = cur.word("a ket name or basis label");
            if (auto it = tab.kets.find(proj.source); it != tab.kets.end()) {
                proj.source_is_ket = true;
                proj.basis = it->second;
            } else {
                proj.source_is_ket = false;
                int hits = 0;
                for (const auto& [bname, labels] : tab.bases) {
                    if (std::find(labels.begin(), labels.end(), proj.source) != labels.end()) {
                        ++hits;
                        proj.basis = bname;
                    }
                }
                if (hits == 0) {
                    cur.fail_at(ref_col, "undeclared name '" + proj.source + "'", proj.source);
                }
                if (hits > 1) {
                    cur.fail_at(ref_col, "label '" + proj.source + "' is ambiguous across bases",
                                proj.source);
                }
            }
            op_basis = proj.basis;
            decl.rule = std::move(proj);
        } else {
            auto lhs_it = tab.ops.find(head);
            if (lhs_it == tab.ops.end()) {
                cur.fail_at(head_col, "undeclared op '" + head + "'", head);
            }
            cur.expect('+', "+");
            const int rhs_col = cur.column();
            const std::string rhs = cur.word("an operator name");
            auto rhs_it = tab.ops.find(rhs);
            if (rhs_it == tab.ops.end()) {
                cur.fail_at(rhs_col, "undeclared op '" + rhs + "'", rhs);
            }
            if (lhs_it->second != rhs_it->second) {
                cur.fail_at(rhs_col, "dimension mismatch: summed ops live on different bases",
                            rhs);
            }
            op_basis = lhs_it->second;
            decl.rule = SumOp{head, rhs};
        }
    } else if (is_number_start(cur.peek())) {
        ScaleOp scale;
        scale.factor = cur.signed_number();
        cur.expect('*', "*");
        const int src_col = cur.column();
        scale.source = cur.word("an operator name");
        auto src_it = tab.ops.find(scale.source);
        if (src_it == tab.ops.end()) {
            cur.fail_at(src_col, "undeclared op '" + scale.source + "'", scale.source);
        }
        op_basis = src_it->second;
        decl.rule = std::move(scale);
    } else {
        cur.fail("expected 'proj', an operator sum, or a scalar multiple");
    }

    tab.ops[decl.name] = op_basis;
    return decl;
}

UnitaryDecl parse_unitary(Cursor& cur, SymbolTables& tab) {
    const int name_col = cur.column();
    UnitaryDecl decl;
    decl.name = cur.word("a unitary name");
    if (tab.unitaries.count(decl.name)) {
        cur.fail_at(name_col, "redeclaration of unitary '" + decl.name + "'", decl.name);
    }
    cur.expect(':', ":");
    const int dom_col = cur.column();
    decl.domain = cur.word("a basis name");
    if (!tab.bases.count(decl.domain)) {
        cur.fail_at(dom_col, "undeclared basis '" + decl.domain + "'", decl.domain);
    }
    cur.expect_arrow();
    const int codom_col = cur.column();
    decl.codomain = cur.word("a basis name");
    if (!tab.bases.count(decl.codomain)) {
        cur.fail_at(codom_col, "undeclared basis '" + decl.codomain + "'", decl.codomain);
    }
    cur.expect('=', "=");
    const int kind_col = cur.column();
    const std::string kind = cur.word("'bs' or 'rows'");
    if (kind == "bs") {
        if (tab.basis_dim(decl.domain) != 2 || tab.basis_dim(decl.codomain) != 2) {
            cur.fail_at(kind_col, "dimension mismatch: bs needs 2-dimensional bases", kind);
        }
        BsUnitary bs;
        bs.q = cur.signed_number();
        bs.r = cur.signed_number();
        bs.beta = cur.signed_number();
        if (std::abs(bs.q * bs.q + bs.r * bs.r - 1.0) > kBsGateTol) {
            cur.fail_at(kind_col, "bs parameters violate q^2+r^2=1", kind);
        }
        decl.rule = bs;
    } else if (kind == "rows") {
        if (tab.basis_dim(decl.domain) != tab.basis_dim(decl.codomain)) {
            cur.fail_at(kind_col, "dimension mismatch: domain and codomain differ", kind);
        }
        cur.expect('[', "[");
        RowsUnitary rows;
        std::vector<Complex> row;
        while (true) {
            row.push_back(cur.coefficient());
            cur.skip_ws();
            const char c = cur.peek();
            if (c == ',') {
                ++cur.pos;
                continue;
            }
            if (c == ';' || c == ']') {
                ++cur.pos;
                rows.rows.push_back(std::move(row));
                row.clear();
                if (c == ']') {
                    break;
                }
                continue;
            }
            cur.fail("expected ',', ';' or ']' in rows matrix");
        }
        const int cols = tab.basis_dim(decl.domain);
        const int nrows = tab.basis_dim(decl.codomain);
        if (static_cast<int>(rows.rows.size()) != nrows) {
            cur.fail_at(kind_col, "dimension mismatch: expected " + std::to_string(nrows) +
                                      " rows, got " + std::to_string(rows.rows.size()),
                        kind);
        }
        for (const auto& r : rows.rows) {
            if (static_cast<int>(r.size()) != cols) {
                cur.fail_at(kind_col, "dimension mismatch: expected " + std::to_string(cols) +
                                          " entries per row, got " + std::to_string(r.size()),
                            kind);
            }
        }
        decl.rule = std::move(rows);
    } else {
        cur.fail_at(kind_col, "expected 'bs' or 'rows'", kind);
    }
    tab.unitaries[decl.name] = {decl.domain, decl.codomain};
    return decl;
}

Query parse_query(Cursor& cur, SymbolTables& tab, Query::Kind kind) {
    Query query;
    query.kind = kind;
    const int op_col = cur.column();
    query.op = cur.word("an operator name");
    auto op_it = tab.ops.find(query.op);
    if (op_it == tab.ops.end()) {
        cur.fail_at(op_col, "undeclared op '" + query.op + "'", query.op);
    }
    cur.keyword("pre");
    const int pre_col = cur.column();
    query.pre = cur.word("a ket name");
    auto pre_it = tab.kets.find(query.pre);
    if (pre_it == tab.kets.end()) {
        cur.fail_at(pre_col, "undeclared ket '" + query.pre + "'", query.pre);
    }
    cur.keyword("post");
    const int post_col = cur.column();
    query.post = cur.word("a ket name");
    auto post_it = tab.kets.find(query.post);
    if (post_it == tab.kets.end()) {
        cur.fail_at(post_col, "undeclared ket '" + query.post + "'", query.post);
    }
    if (!cur.at_end()) {
        cur.keyword("via");
        const int via_col = cur.column();
        query.via = cur.word("a unitary name");
        auto via_it = tab.unitaries.find(query.via);
        if (via_it == tab.unitaries.end()) {
            cur.fail_at(via_col, "undeclared unitary '" + query.via + "'", query.via);
        }
        if (via_it->second.first != pre_it->second) {
            cur.fail_at(via_col, "dimension mismatch: unitary domain does not match pre ket",
                        query.via);
        }
        if (via_it->second.second != post_it->second) {
            cur.fail_at(via_col, "dimension mismatch: unitary codomain does not match post ket",
                        query.via);
        }
    } else if (pre_it->second != post_it->second) {
        cur.fail_at(post_col, "dimension mismatch: pre and post kets live on different bases",
                    query.post);
    }
    if (op_it->second != pre_it->second) {
        cur.fail_at(op_col, "dimension mismatch: operator does not act on the pre ket's basis",
                    query.op);
    }
    return query;
}

std::string query_key(int index, const std::string& op) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%03d", index);
    return std::string(buf) + ":" + op;
}

} // namespace

ParseError::ParseError(int line, int column, std::string message, std::string offending_text)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
            message + " (near '" + offending_text + "')"),
      line_(line),
      column_(column),
      message_(std::move(message)),
      offending_text_(std::move(offending_text)) {}

Program parse(std::string_view source) {
    Program program;
    SymbolTables tables;
    bool version_seen = false;

    int line_no = 0;
    std::size_t offset = 0;
    while (offset <= source.size()) {
        const std::size_t newline = source.find('\n', offset);
        std::string_view line = source.substr(
            offset, newline == std::string_view::npos ? source.size() - offset : newline - offset);
        ++line_no;
        if (newline == std::string_view::npos && line.empty() && offset == source.size() &&
            line_no > 1) {
            break;
        }
        offset = newline == std::string_view::npos ? source.size() + 1 : newline + 1;

        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }

        Cursor cur{line, line_no};
        if (cur.at_end()) {
            if (newline == std::string_view::npos) {
                break;
            }
            continue;
        }

        if (!version_seen) {
            const int col = cur.column();
            const std::string head = cur.word("the version line 'wks 1'");
            if (head != "wks") {
                cur.fail_at(col, "missing version line 'wks 1'", head);
            }
            const double version = cur.signed_number();
            if (version != kWksVersion) {
                cur.fail_at(col, "unsupported wks version", head);
            }
            if (!cur.at_end()) {
                cur.fail("unexpected trailing input after version");
            }
            version_seen = true;
        } else {
            const int head_col = cur.column();
            const std::string head = cur.word("a statement");
            if (head == "basis") {
                program.statements.emplace_back(parse_basis(cur, tables));
            } else if (head == "ket") {
                program.statements.emplace_back(parse_ket(cur, tables));
            } else if (head == "op") {
                program.statements.emplace_back(parse_op(cur, tables));
            } else if (head == "unitary") {
                program.statements.emplace_back(parse_unitary(cur, tables));
            } else if (head == "weak") {
                program.statements.emplace_back(parse_query(cur, tables, Query::Kind::weak));
            } else if (head == "abl") {
                program.statements.emplace_back(parse_query(cur, tables, Query::Kind::abl));
            } else {
                cur.fail_at(head_col, "unknown statement '" + head + "'", head);
            }
            if (!cur.at_end()) {
                cur.fail("unexpected trailing input");
            }
        }

        if (newline == std::string_view::npos) {
            break;
        }
    }
    return program;
}

namespace {

struct Environment {
    std::map<std::string, Basis> bases;
    std::map<std::string, StateVector> kets;
    std::map<std::string, OperatorMatrix> ops;
    std::map<std::string, OperatorMatrix> unitaries;
};

struct Evaluator {
    Environment env;
    ScenarioReport report;
    int query_index = 0;

    void operator()(const BasisDecl& decl) {
        env.bases.emplace(decl.name, Basis(decl.labels));
    }

    void operator()(const KetDecl& decl) {
        const Basis& basis = env.bases.at(decl.basis);
        CVector amps = CVector::Zero(basis.dimension());
        for (const auto& term : decl.terms) {
            amps(*basis.index_of(term.label)) += term.coefficient;
        }
        env.kets.emplace(decl.name, normalize(StateVector(basis, std::move(amps))));
    }

    void operator()(const OpDecl& decl) {
        if (const auto* proj = std::get_if<ProjOp>(&decl.rule)) {
            const StateVector source =
                proj->source_is_ket
                    ? env.kets.at(proj->source)
                    : StateVector::basis_ket(env.bases.at(proj->basis), proj->source);
            env.ops.emplace(decl.name, projector_onto(source));
        } else if (const auto* sum = std::get_if<SumOp>(&decl.rule)) {
            env.ops.emplace(decl.name, env.ops.at(sum->lhs) + env.ops.at(sum->rhs));
        } else {
            const auto& scale = std::get<ScaleOp>(decl.rule);
            env.ops.emplace(decl.name,
                            Complex(scale.factor, 0.0) * env.ops.at(scale.source));
        }
    }

    void operator()(const UnitaryDecl& decl) {
        const Basis& domain = env.bases.at(decl.domain);
        const Basis& codomain = env.bases.at(decl.codomain);
        if (const auto* bs = std::get_if<BsUnitary>(&decl.rule)) {
            // Rescale onto the exact constraint so the matrix is unitary at
            // full precision even when q and r were typed to few digits.
            const double h = std::hypot(bs->q, bs->r);
            env.unitaries.emplace(
                decl.name,
                beam_splitter_matrix(BeamSplitter(bs->q / h, bs->r / h, bs->beta), domain,
                                     codomain));
        } else {
            const auto& rows = std::get<RowsUnitary>(decl.rule);
            const int n = domain.dimension();
            CMatrix m(n, n);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    m(i, j) = rows.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                }
            }
            env.unitaries.emplace(decl.name, OperatorMatrix(domain, codomain, std::move(m)));
        }
    }

    void operator()(const Query& query) {
        const int index = query_index++;
        const std::string key = query_key(index, query.op);
        const bool is_weak = query.kind == Query::Kind::weak;
        std::string note = key + (is_weak ? " weak" : " abl") + " pre " + query.pre + " post " +
                           query.post + (query.via.empty() ? "" : " via " + query.via);
        const auto mark = [&](const char* code) {
            if (is_weak) {
                report.weak_values[key] = Outcome<Complex>::fail(code);
            } else {
                report.abl[key] = Outcome<ABLDistribution>::fail(code);
            }
            report.notes.push_back(note + ": " + code);
        };
        try {
            const StateVector& pre = env.kets.at(query.pre);
            const StateVector& post = env.kets.at(query.post);
            const OperatorMatrix evolution = query.via.empty()
                                                 ? OperatorMatrix::identity(pre.basis())
                                                 : env.unitaries.at(query.via);
            const PrePost pp(pre, post, evolution);
            report.amplitudes[query_key(index, "overlap")] =
                inner(post, apply(evolution, pre));
            if (is_weak) {
                report.weak_values[key] =
                    Outcome<Complex>::ok(weak_value(env.ops.at(query.op), pp));
            } else {
                report.abl[key] = Outcome<ABLDistribution>::ok(
                    abl_probability(eigendecompose_hermitian(env.ops.at(query.op)), pp));
            }
            report.notes.push_back(note + ": ok");
        } catch (const PostSelectionOrthogonal&) {
            mark("PostSelectionOrthogonal");
        } catch (const NoConsistentHistory&) {
            mark("NoConsistentHistory");
        } catch (const NotHermitian&) {
            mark("NotHermitian");
        } catch (const NotUnitary&) {
            mark("NotUnitary");
        } catch (const DegenerateInput&) {
            mark("DegenerateInput");
        } catch (const BasisMismatch& e) {
            throw EvalError("query " + key + ": " + e.what());
        }
    }
};

} // namespace

ScenarioReport evaluate(const Program& program) {
    Evaluator evaluator;
    evaluator.report.name = "wks";
    for (const auto& statement : program.statements) {
        std::visit(evaluator, statement);
    }
    return evaluator.report;
}

} // namespace weakval::dsl
