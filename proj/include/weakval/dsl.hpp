#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "weakval/report.hpp"

namespace weakval::dsl {

/// Syntax or static-validation failure, pointing at a 1-based position in
/// the source text.
class ParseError : public Error {
public:
    ParseError(int line, int column, std::string message, std::string offending_text);

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }
    const std::string& offending_text() const { return offending_text_; }

private:
    int line_;
    int column_;
    std::string message_;
    std::string offending_text_;
};

struct BasisDecl {
    std::string name;
    std::vector<std::string> labels;

    bool operator==(const BasisDecl&) const = default;
};

struct KetTerm {
    Complex coefficient;
    std::string label;

    bool operator==(const KetTerm&) const = default;
};

/// `ket name : Basis = c|x> + c|y> ...`; the stored terms are as written,
/// normalization happens at evaluation.
struct KetDecl {
    std::string name;
    std::string basis;
    std::vector<KetTerm> terms;

    bool operator==(const KetDecl&) const = default;
};

/// `op name = proj source` where source is a declared ket or, failing
/// that, a basis label unique across the declared bases. The parser
/// resolves which and records the owning basis.
struct ProjOp {
    std::string source;
    bool source_is_ket;
    std::string basis;

    bool operator==(const ProjOp&) const = default;
};

struct SumOp {
    std::string lhs;
    std::string rhs;

    bool operator==(const SumOp&) const = default;
};

struct ScaleOp {
    double factor;
    std::string source;

    bool operator==(const ScaleOp&) const = default;
};

struct OpDecl {
    std::string name;
    std::variant<ProjOp, SumOp, ScaleOp> rule;

    bool operator==(const OpDecl&) const = default;
};

/// `= bs q r beta`; (q, r) are rescaled onto q²+r²=1 at evaluation after
/// the parser's coarse 1e-6 gate, so the resulting matrix is unitary at
/// full precision.
struct BsUnitary {
    double q;
    double r;
    double beta;

    bool operator==(const BsUnitary&) const = default;
};

/// `= rows [ a, b ; c, d ]`, row-major over (codomain, domain) labels.
struct RowsUnitary {
    std::vector<std::vector<Complex>> rows;

    bool operator==(const RowsUnitary&) const = default;
};

struct UnitaryDecl {
    std::string name;
    std::string domain;
    std::string codomain;
    std::variant<BsUnitary, RowsUnitary> rule;

    bool operator==(const UnitaryDecl&) const = default;
};

struct Query {
    enum class Kind { weak, abl };

    Kind kind;
    std::string op;
    std::string pre;
    std::string post;
    std::string via; // unitary name; empty means identity evolution

    bool operator==(const Query&) const = default;
};

using Statement = std::variant<BasisDecl, KetDecl, OpDecl, UnitaryDecl, Query>;

struct Program {
    std::vector<Statement> statements;

    bool operator==(const Program&) const = default;
};

/// Parses `.wks` source. One statement per line, `#` starts a comment, and
/// any non-empty program must open with the version line `wks 1`. All
/// names, labels and basis dimensions are validated here, so evaluation
/// only fails on numeric degeneracies.
Program parse(std::string_view source);

/// Runs the program's queries in order. Results land in the report keyed
/// "NNN:op" by query ordinal; degenerate queries become per-entry error
/// markers rather than aborting the run.
ScenarioReport evaluate(const Program& program);

} // namespace weakval::dsl
