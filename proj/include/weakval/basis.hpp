#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace weakval {

/// An ordered list of distinct, non-empty labels naming the coordinate axes
/// of a finite-dimensional Hilbert space. Two Basis values are the same
/// space exactly when their label lists are equal, order included.
class Basis {
public:
    explicit Basis(std::vector<std::string> labels);

    /// Product basis with labels "x⊗y", row-major in (a-label, b-label).
    static Basis tensor(const Basis& a, const Basis& b);

    int dimension() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
    std::optional<int> index_of(std::string_view label) const;

    bool operator==(const Basis&) const = default;

private:
    std::vector<std::string> labels_;
};

} // namespace weakval
