#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "weakval/dsl.hpp"
#include "weakval/scenarios.hpp"

using namespace weakval;
using namespace weakval::testing;

namespace {

// Mirrors fixtures/three_box.wks.
const char* kThreeBoxProgram = R"(wks 1
# three boxes with the sign-flipped post-selection
basis Boxes A B C
ket in : Boxes = 1|A> + 1|B> + 1|C>
ket f : Boxes = 1|A> + 1|B> - 1|C>
op A = proj A
op B = proj B
op C = proj C
weak A pre in post f
weak B pre in post f
weak C pre in post f
abl A pre in post f
abl B pre in post f
abl C pre in post f
)";

// Mirrors fixtures/mzi.wks.
const char* kMziProgram = R"(wks 1
# second splitter with q = 1/sqrt(5); post-select the dark port
basis Arms I N
basis Ports B D
ket in : Arms = 1|N> + 1i|I>
ket atD : Ports = 1|D>
op N = proj N
unitary BS2 : Arms -> Ports = bs 0.4472135955 0.894427191 0
weak N pre in post atD via BS2
abl N pre in post atD via BS2
)";

// Mirrors fixtures/hardy.wks: the 4-dimensional spaces written out long-hand.
const char* kHardyProgram = R"(wks 1
# double interferometer after annihilation; coincidence post-selection
basis Arms II IN NI NN
basis Ports BB BD DB DD
ket in : Arms = 1|NN> + 1i|IN> + 1i|NI>
ket dd : Ports = 1|DD>
op II = proj II
op IN = proj IN
op NI = proj NI
op NN = proj NN
unitary U : Arms -> Ports = rows [ 0.5, 0.5i, 0.5i, -0.5 ; 0.5i, 0.5, -0.5, 0.5i ; 0.5i, -0.5, 0.5, 0.5i ; -0.5, 0.5i, 0.5i, 0.5 ]
weak II pre in post dd via U
weak IN pre in post dd via U
weak NI pre in post dd via U
weak NN pre in post dd via U
abl NN pre in post dd via U
)";

Complex weak_of(const ScenarioReport& report, const std::string& key) {
    REQUIRE(report.weak_values.at(key).has_value());
    return *report.weak_values.at(key);
}

} // namespace

TEST_CASE("the reference box program parses to twelve statements") {
    const dsl::Program program = dsl::parse(kThreeBoxProgram);
    CHECK(program.statements.size() == 12);
}

TEST_CASE("empty and comment-only sources parse to empty programs") {
    CHECK(dsl::parse("").statements.empty());
    CHECK(dsl::parse("\n\n").statements.empty());
    CHECK(dsl::parse("# nothing here\n").statements.empty());
    CHECK(dsl::parse("wks 1\n").statements.empty());
}

TEST_CASE("version line is required and checked") {
    CHECK_THROWS_AS(dsl::parse("basis B A\n"), dsl::ParseError);
    CHECK_THROWS_AS(dsl::parse("wks 2\n"), dsl::ParseError);
    try {
        dsl::parse("basis B A\n");
        FAIL("expected ParseError");
    } catch (const dsl::ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.message().find("version") != std::string::npos);
    }
}

TEST_CASE("undeclared labels are reported with position and text") {
    const std::string source = "wks 1\nbasis B3 A B C\nket x : B3 = 1|A> + 1|Z>\n";
    try {
        dsl::parse(source);
        FAIL("expected ParseError");
    } catch (const dsl::ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.offending_text() == "Z");
        CHECK(e.column() >= 22);
    }
}

TEST_CASE("malformed complex literals are rejected") {
    CHECK_THROWS_AS(dsl::parse("wks 1\nbasis B A\nket k : B = 1+2|A>\n"), dsl::ParseError);
    CHECK_THROWS_AS(dsl::parse("wks 1\nbasis B A\nket k : B = |A>\n"), dsl::ParseError);
    CHECK_THROWS_AS(dsl::parse("wks 1\nbasis B A\nket k : B = 1..2|A>\n"), dsl::ParseError);
}

TEST_CASE("static validation errors") {
    // redeclaration
    CHECK_THROWS_AS(dsl::parse("wks 1\nbasis B A\nbasis B C\n"), dsl::ParseError);
    // zero-norm ket
    CHECK_THROWS_AS(dsl::parse("wks 1\nbasis B A B2\nket k : B = 0|A>\n"), dsl::ParseError);
    // splitter parameters off the unitarity circle
    CHECK_THROWS_AS(
        dsl::parse("wks 1\nbasis A1 I N\nbasis P1 B D\nunitary U : A1 -> P1 = bs 0.9 0.9 0\n"),
        dsl::ParseError);
    // rows with the wrong shape
    CHECK_THROWS_AS(
        dsl::parse("wks 1\nbasis A1 I N\nbasis P1 B D\nunitary U : A1 -> P1 = rows [ 1, 0 ]\n"),
        dsl::ParseError);
    // query across incompatible bases
    CHECK_THROWS_AS(dsl::parse("wks 1\nbasis B1 A B\nbasis B2 X Y\nket u : B1 = 1|A>\n"
                               "ket v : B2 = 1|X>\nop P = proj A\nweak P pre u post v\n"),
                    dsl::ParseError);
    // unknown statement head
    CHECK_THROWS_AS(dsl::parse("wks 1\nfrobnicate\n"), dsl::ParseError);
}

TEST_CASE("parse error positions always index into the source") {
    const std::vector<std::string> sources = {
        "wks 1\nbasis\n",
        "wks 1\nbasis B A\nket k : B = \n",
        "wks 1\nbasis B A\nket k : B 1|A>\n",
        "wks 1\nbasis B A\nket k : B = 1|A> 1|A>\n",
        "wks 1\nbasis B A\nop O = proj\n",
        "wks 1\nbasis B A\nweak X pre a post b\n",
        "wks 1\nnope nope nope\n",
        "wks 1\nbasis B A\nket k : B = 1|A> +\n",
    };
    for (const auto& source : sources) {
        std::vector<std::string> lines;
        std::size_t start = 0;
        while (start <= source.size()) {
            const std::size_t nl = source.find('\n', start);
            if (nl == std::string::npos) {
                lines.push_back(source.substr(start));
                break;
            }
            lines.push_back(source.substr(start, nl - start));
            start = nl + 1;
        }
        try {
            dsl::parse(source);
            FAIL("expected ParseError for: ", source);
        } catch (const dsl::ParseError& e) {
            REQUIRE(e.line() >= 1);
            REQUIRE(static_cast<std::size_t>(e.line()) <= lines.size());
            CHECK(e.column() >= 1);
            CHECK(static_cast<std::size_t>(e.column()) <=
                  lines[static_cast<std::size_t>(e.line() - 1)].size() + 1);
        }
    }
}

TEST_CASE("box program evaluates to the expected weak values") {
    const ScenarioReport report = dsl::evaluate(dsl::parse(kThreeBoxProgram));
    CHECK(near(weak_of(report, "000:A"), Complex(1, 0), 1e-10));
    CHECK(near(weak_of(report, "001:B"), Complex(1, 0), 1e-10));
    CHECK(near(weak_of(report, "002:C"), Complex(-1, 0), 1e-10));
    CHECK(near(report.abl.at("003:A")->probability_of(1.0), 1.0, 1e-10));
    CHECK(near(report.abl.at("005:C")->probability_of(1.0), 0.2, 1e-10));
}

TEST_CASE("program results match the built-in scenario") {
    const ScenarioReport program = dsl::evaluate(dsl::parse(kThreeBoxProgram));
    const ScenarioReport builtin = three_box();
    const char* boxes[] = {"A", "B", "C"};
    for (int i = 0; i < 3; ++i) {
        const std::string weak_key = "00" + std::to_string(i) + ":" + boxes[i];
        const std::string abl_key = "00" + std::to_string(i + 3) + ":" + boxes[i];
        CHECK(near(weak_of(program, weak_key), *builtin.weak_values.at(boxes[i]), 1e-12));
        CHECK(near(program.abl.at(abl_key)->probability_of(1.0),
                   builtin.abl.at(boxes[i])->probability_of(1.0), 1e-12));
    }
}

TEST_CASE("interferometer program reproduces the minus-one point") {
    const ScenarioReport report = dsl::evaluate(dsl::parse(kMziProgram));
    CHECK(near(weak_of(report, "000:N"), Complex(-1, 0), 1e-10));
    CHECK(near(report.abl.at("001:N")->probability_of(1.0), 0.2, 1e-10));
}

TEST_CASE("rows program reproduces the coincidence weak values") {
    const ScenarioReport report = dsl::evaluate(dsl::parse(kHardyProgram));
    CHECK(near(weak_of(report, "000:II"), Complex(0, 0), 1e-10));
    CHECK(near(weak_of(report, "001:IN"), Complex(1, 0), 1e-10));
    CHECK(near(weak_of(report, "002:NI"), Complex(1, 0), 1e-10));
    CHECK(near(weak_of(report, "003:NN"), Complex(-1, 0), 1e-10));
    CHECK(near(report.abl.at("004:NN")->probability_of(1.0), 0.2, 1e-10));
}

TEST_CASE("post equal to pre turns weak values into mean values") {
    const char* source = R"(wks 1
basis B X Y Z
ket s : B = 1|X> + 2i|Y> - 0.5|Z>
op PX = proj X
op PY = proj Y
op S = PX + PY
op T = 2.5 * S
weak PX pre s post s
weak S pre s post s
weak T pre s post s
)";
    const ScenarioReport report = dsl::evaluate(dsl::parse(source));

    const Basis basis({"X", "Y", "Z"});
    CVector amps(3);
    amps << Complex(1, 0), Complex(0, 2), Complex(-0.5, 0);
    const StateVector s(basis, amps);
    const OperatorMatrix px = projector_onto(StateVector::basis_ket(basis, "X"));
    const OperatorMatrix py = projector_onto(StateVector::basis_ket(basis, "Y"));
    const OperatorMatrix sum = px + py;

    CHECK(near(weak_of(report, "000:PX"), Complex(mean_value(px, s), 0), 1e-12));
    CHECK(near(weak_of(report, "001:S"), Complex(mean_value(sum, s), 0), 1e-12));
    CHECK(near(weak_of(report, "002:T"),
               Complex(mean_value(Complex(2.5, 0) * sum, s), 0), 1e-12));
}

TEST_CASE("proj accepts ket names ahead of labels and both routes agree") {
    const char* source = R"(wks 1
basis B A B2
ket rayA : B = 1|A>
op fromKet = proj rayA
op fromLabel = proj A
weak fromKet pre rayA post rayA
weak fromLabel pre rayA post rayA
)";
    const ScenarioReport report = dsl::evaluate(dsl::parse(source));
    CHECK(near(weak_of(report, "000:fromKet"), weak_of(report, "001:fromLabel"), 1e-15));
}

TEST_CASE("degenerate queries become markers instead of aborting") {
    const char* dark = R"(wks 1
basis Arms I N
basis Ports B D
ket in : Arms = 1|N> + 1i|I>
ket atD : Ports = 1|D>
ket atB : Ports = 1|B>
op N = proj N
unitary BS2 : Arms -> Ports = bs 0.7071067811865476 0.7071067811865476 0
weak N pre in post atD via BS2
weak N pre in post atB via BS2
)";
    const ScenarioReport report = dsl::evaluate(dsl::parse(dark));
    CHECK(!report.weak_values.at("000:N").has_value());
    CHECK(report.weak_values.at("000:N").error == "PostSelectionOrthogonal");
    CHECK(report.weak_values.at("001:N").has_value());

    const char* skewed = R"(wks 1
basis Arms I N
basis Ports B D
ket in : Arms = 1|N> + 1i|I>
ket atD : Ports = 1|D>
op N = proj N
unitary U : Arms -> Ports = rows [ 1, 1 ; 0, 1 ]
weak N pre in post atD via U
)";
    const ScenarioReport bad = dsl::evaluate(dsl::parse(skewed));
    CHECK(!bad.weak_values.at("000:N").has_value());
    CHECK(bad.weak_values.at("000:N").error == "NotUnitary");
}

TEST_CASE("parsing and evaluation are deterministic") {
    const dsl::Program p1 = dsl::parse(kThreeBoxProgram);
    const dsl::Program p2 = dsl::parse(kThreeBoxProgram);
    CHECK(p1 == p2);
    CHECK(dsl::evaluate(p1) == dsl::evaluate(p2));

    const dsl::Program h1 = dsl::parse(kHardyProgram);
    CHECK(h1 == dsl::parse(kHardyProgram));
    CHECK(dsl::evaluate(h1) == dsl::evaluate(h1));
}

TEST_CASE("whitespace inside lines is free-form") {
    const char* spaced = "wks 1\nbasis B A B2\nket k :B=1|A>+ 1 | B2 >\nop P=proj A\n"
                         "weak P pre k post k\n";
    const ScenarioReport report = dsl::evaluate(dsl::parse(spaced));
    CHECK(near(weak_of(report, "000:P"), Complex(0.5, 0), 1e-12));
}
