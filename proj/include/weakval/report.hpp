#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weakval/measure.hpp"

namespace weakval {

/// A computed quantity or the error code that replaced it. Degenerate
/// queries (dark ports, inconsistent histories) are recorded per entry so
/// a sweep or program can keep going past singular points.
template <typename T>
struct Outcome {
    std::optional<T> value;
    std::string error; // error code, nonempty exactly when value is absent

    static Outcome ok(T v) { return Outcome{std::move(v), {}}; }
    static Outcome fail(std::string code) { return Outcome{std::nullopt, std::move(code)}; }

    bool has_value() const { return value.has_value(); }
    const T& operator*() const { return *value; }
    const T* operator->() const { return &*value; }

    bool operator==(const Outcome&) const = default;
};

/// Structured result of one scenario or scenario program: weak values and
/// ABL distributions keyed by operator name, diagnostic amplitude dumps,
/// and free-form self-check notes.
struct ScenarioReport {
    std::string name;
    std::map<std::string, Outcome<Complex>> weak_values;
    std::map<std::string, Outcome<ABLDistribution>> abl;
    std::map<std::string, Complex> amplitudes;
    double post_selection_probability = 0.0;
    std::vector<std::string> notes;

    bool operator==(const ScenarioReport&) const = default;
};

} // namespace weakval
