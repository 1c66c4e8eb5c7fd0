#pragma once

// Shared, immutable variable tables.  Polynomials carry a pointer to their
// table; mixing polynomials from different tables is a logic error and is
// checked at every binary operation.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace eds {

class VarTable {
public:
    explicit VarTable(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw std::invalid_argument("empty variable name");
            if (!index_.emplace(names_[i], i).second)
                throw std::invalid_argument("duplicate variable name: " + names_[i]);
        }
    }

    static std::shared_ptr<const VarTable> make(std::vector<std::string> names) {
        return std::make_shared<const VarTable>(std::move(names));
    }

    // prefix0, prefix1, ..., prefix{k-1}
    static std::shared_ptr<const VarTable> indexed(const std::string& prefix, std::size_t k) {
        std::vector<std::string> names;
        names.reserve(k);
        for (std::size_t i = 0; i < k; ++i) names.push_back(prefix + std::to_string(i));
        return make(std::move(names));
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }

    std::optional<std::size_t> index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

}  // namespace eds
