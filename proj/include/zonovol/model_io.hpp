#ifndef ZONOVOL_MODEL_IO_HPP
#define ZONOVOL_MODEL_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "zonovol/matrix.hpp"

namespace zonovol {

/// Reads a model from a JSON file {"name": ..., "A": [[...]], "B": [[...]]}.
/// Malformed input raises ParseError with the offending location.
SystemModel parse_model(const std::filesystem::path& path);

/// Same, from in-memory text; origin labels error messages.
SystemModel parse_model_text(std::string_view text,
                             std::string_view origin = "<input>");

/// Serializes a model back to JSON. Entries are written with
/// shortest-round-trip precision, so parse(render(m)) reproduces m exactly.
std::string render_model(const SystemModel& model);

}  // namespace zonovol

#endif
