#include "weakval/basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace weakval {

Basis::Basis(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw std::invalid_argument("basis needs at least one label");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].empty()) {
            throw std::invalid_argument("basis labels must be non-empty");
        }
        for (std::size_t j = i + 1; j < labels_.size(); ++j) {
            if (labels_[i] == labels_[j]) {
                throw std::invalid_argument("duplicate basis label '" + labels_[i] + "'");
            }
        }
    }
}

Basis Basis::tensor(const Basis& a, const Basis& b) {
    std::vector<std::string> labels;
    labels.reserve(a.labels_.size() * b.labels_.size());
    for (const auto& la : a.labels_) {
        for (const auto& lb : b.labels_) {
            labels.push_back(la + "⊗" + lb);
        }
    }
    return Basis(std::move(labels));
}

std::optional<int> Basis::index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return static_cast<int>(it - labels_.begin());
}

} // namespace weakval
