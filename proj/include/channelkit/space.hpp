#pragma once

#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "channelkit/errors.hpp"

namespace channelkit {

// A finite sample space: an ordered list of distinct, nonempty labels.
// Cheap to copy (labels are shared); two spaces are equal when their label
// sequences are equal. All binary operations in the library insist on equal
// spaces and throw space_mismatch otherwise.
class space {
public:
    space() : labels_(std::make_shared<const std::vector<std::string>>()) {}

    explicit space(std::vector<std::string> labels) {
        if (labels.empty()) throw invalid_argument("space: no outcomes");
        std::unordered_set<std::string_view> seen;
        for (const auto& l : labels) {
            if (l.empty()) throw invalid_argument("space: empty outcome label");
            if (!seen.insert(l).second)
                throw invalid_argument("space: duplicate outcome label '" + l + "'");
        }
        labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
    }

    space(std::initializer_list<std::string> labels)
        : space(std::vector<std::string>(labels)) {}

    std::size_t size() const { return labels_->size(); }
    const std::vector<std::string>& labels() const { return *labels_; }
    const std::string& label(std::size_t i) const { return (*labels_)[i]; }

    std::optional<std::size_t> find(std::string_view label) const {
        for (std::size_t i = 0; i < labels_->size(); ++i)
            if ((*labels_)[i] == label) return i;
        return std::nullopt;
    }

    std::size_t index_of(std::string_view label) const {
        if (auto i = find(label)) return *i;
        throw unknown_outcome("unknown outcome '" + std::string(label) + "'");
    }

    bool contains(std::string_view label) const { return find(label).has_value(); }

    friend bool operator==(const space& a, const space& b) {
        return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
    }
    friend bool operator!=(const space& a, const space& b) { return !(a == b); }

private:
    std::shared_ptr<const std::vector<std::string>> labels_;
};

inline void require_same_space(const space& a, const space& b, const char* what) {
    if (a != b) throw space_mismatch(std::string(what) + ": operands live on different spaces");
}

} // namespace channelkit
