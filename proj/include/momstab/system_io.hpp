#ifndef MOMSTAB_SYSTEM_IO_HPP
#define MOMSTAB_SYSTEM_IO_HPP

#include <string>

#include <json.hpp>

#include "momstab/model.hpp"

namespace momstab {

// System spec document: JSON with keys `dim`, `noise_count`, `drift`
// (n x n rows, or a flat row-major array of n^2 numbers) and `noise`
// (one n x n matrix per driver). Parse errors throw InvalidInput naming the
// offending line/field.
LinearSDESystem load_system(const std::string& path);
LinearSDESystem system_from_json_text(const std::string& text,
                                      const std::string& origin = "<memory>");
nlohmann::json system_to_json(const LinearSDESystem& sys);
void save_system(const LinearSDESystem& sys, const std::string& path);

}  // namespace momstab

#endif
