#include "starprod/varspace.hpp"

#include <stdexcept>

namespace starprod {

VarSpace::VarSpace(std::vector<std::string> names) : m_names(std::move(names)) {
    for (int i = 0; i < dim(); ++i) {
        auto [it, inserted] = m_index.emplace(m_names[static_cast<size_t>(i)], i);
        if (!inserted)
            throw std::invalid_argument("duplicate variable name '" + m_names[static_cast<size_t>(i)] + "'");
    }
}

std::shared_ptr<const VarSpace> VarSpace::make(std::vector<std::string> names) {
    if (names.empty()) throw std::invalid_argument("variable space must have at least one variable");
    return std::shared_ptr<const VarSpace>(new VarSpace(std::move(names)));
}

std::optional<int> VarSpace::index(std::string_view name) const {
    auto it = m_index.find(name);
    if (it == m_index.end()) return std::nullopt;
    return it->second;
}

VarSpacePtr numbered_space(int dim, const std::string& prefix) {
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(dim));
    for (int i = 1; i <= dim; ++i) names.push_back(prefix + std::to_string(i));
    return VarSpace::make(std::move(names));
}

void require_same_space(const VarSpace& a, const VarSpace& b, const char* where) {
    if (!a.same_as(b))
        throw std::invalid_argument(std::string(where) + ": operands live in different variable spaces");
}

} // namespace starprod
