#pragma once

// Finite groups given by a full multiplication table.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bpu/zmodule.hpp"

namespace bpu {

class MultiplicationTable {
public:
    MultiplicationTable() = default;
    // product[a * order + b] = a * b. Throws std::invalid_argument unless the
    // table is a group table with the given identity.
    MultiplicationTable(std::vector<std::uint32_t> product, std::uint32_t identity, std::vector<std::string> labels = {},
                        std::vector<std::uint32_t> generators = {});

    std::size_t order() const { return order_; }
    std::uint32_t identity() const { return identity_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return product_[a * order_ + b]; }
    std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::uint32_t>& generators() const { return generators_; }

    bool is_associative() const;

    nlohmann::json to_json() const;
    static MultiplicationTable from_json(const nlohmann::json& j);

private:
    std::size_t order_ = 0;
    std::uint32_t identity_ = 0;
    std::vector<std::uint32_t> product_;
    std::vector<std::uint32_t> inverse_;
    std::vector<std::string> labels_;
    std::vector<std::uint32_t> generators_;
};

// Membership flags of the subgroup generated by `seeds`.
std::vector<bool> generated_subgroup(const MultiplicationTable& g, const std::vector<std::uint32_t>& seeds);

std::vector<bool> commutator_subgroup(const MultiplicationTable& g);
std::vector<bool> center(const MultiplicationTable& g);

// G / [G, G] as an abelian group.
FgAbGroup abelianization(const MultiplicationTable& g);

}  // namespace bpu
