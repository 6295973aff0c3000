#pragma once

#include <string>

#include <json.hpp>

#include "flimit/grigorchuk.hpp"
#include "flimit/hnn.hpp"
#include "flimit/marked.hpp"
#include "flimit/plhomeo.hpp"
#include "flimit/words_f.hpp"

namespace flimit {

inline constexpr const char* kFormatTag = "flimit/1";

nlohmann::json element_to_json(const PLHomeo& f);
PLHomeo element_from_json(const nlohmann::json& j);

nlohmann::json interval_set_to_json(const IntervalSet& s);

/// Marked tuples carry a backend tag: "f" (breakpoint elements) or
/// "grig" (letter strings).
nlohmann::json marked_to_json(const MarkedTuple<PLHomeo>& m);
nlohmann::json marked_to_json(const MarkedTuple<GrigWord>& m);
std::string marked_backend(const nlohmann::json& j);
MarkedTuple<PLHomeo> marked_f_from_json(const nlohmann::json& j);
MarkedTuple<GrigWord> marked_grig_from_json(const nlohmann::json& j);

/// Symbol table files: {"format": ..., "type": "symbols", "symbols": {name:
/// element-object | word-expression-string}}. Expressions may reference
/// built-ins and earlier entries of the same file.
void load_symbols(SymbolTable& table, const nlohmann::json& j);

nlohmann::json hnn_to_json(const HnnWord& w);

}  // namespace flimit
