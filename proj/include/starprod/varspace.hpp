#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace starprod {

// An ordered list of variable names. Polynomials, operators, and algebras all
// carry a shared pointer to their space; mixing objects over different spaces
// is an error, detected by name-list comparison (not pointer identity).
class VarSpace {
public:
    static std::shared_ptr<const VarSpace> make(std::vector<std::string> names);

    int dim() const { return static_cast<int>(m_names.size()); }
    const std::string& name(int i) const { return m_names.at(static_cast<size_t>(i)); }
    const std::vector<std::string>& names() const { return m_names; }
    std::optional<int> index(std::string_view name) const;

    bool same_as(const VarSpace& other) const { return m_names == other.m_names; }

private:
    explicit VarSpace(std::vector<std::string> names);

    std::vector<std::string> m_names;
    std::map<std::string, int, std::less<>> m_index;
};

using VarSpacePtr = std::shared_ptr<const VarSpace>;

// Convenience: "x1".."x<dim>".
VarSpacePtr numbered_space(int dim, const std::string& prefix = "x");

// Throws std::invalid_argument when the two spaces carry different name lists.
void require_same_space(const VarSpace& a, const VarSpace& b, const char* where);

} // namespace starprod
