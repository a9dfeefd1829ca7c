#ifndef FAKMCT_GROUPS_HPP
#define FAKMCT_GROUPS_HPP

#include <cstddef>
#include <vector>

#include <json.hpp>

namespace fakmct {

/// Parts grouped into families labelled 1..family_count.
struct PartFamilies {
    std::size_t family_count = 0;
    std::vector<std::size_t> part_family;

    friend bool operator==(const PartFamilies&, const PartFamilies&) = default;
};

/// Machines grouped into groups labelled 1..group_count.
struct MachineGroups {
    std::size_t group_count = 0;
    std::vector<std::size_t> machine_group;

    friend bool operator==(const MachineGroups&, const MachineGroups&) = default;
};

/// Relabels arbitrary ids to 1..n in order of first appearance. Returns n.
template <typename Label>
std::size_t compact_labels(const std::vector<Label>& raw, std::vector<std::size_t>& out) {
    std::vector<std::pair<Label, std::size_t>> seen;
    out.clear();
    out.reserve(raw.size());
    for (const auto& id : raw) {
        std::size_t label = 0;
        for (const auto& [key, value] : seen) {
            if (key == id) {
                label = value;
                break;
            }
        }
        if (label == 0) {
            label = seen.size() + 1;
            seen.emplace_back(id, label);
        }
        out.push_back(label);
    }
    return seen.size();
}

inline void to_json(nlohmann::json& j, const PartFamilies& f) {
    j = nlohmann::json{{"families", f.family_count}, {"part_family", f.part_family}};
}

inline void to_json(nlohmann::json& j, const MachineGroups& g) {
    j = nlohmann::json{{"groups", g.group_count}, {"machine_group", g.machine_group}};
}

}  // namespace fakmct

#endif  // FAKMCT_GROUPS_HPP
