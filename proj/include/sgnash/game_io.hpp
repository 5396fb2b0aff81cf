#pragma once

#include <string>

#include <json.hpp>

#include "sgnash/game.hpp"
#include "sgnash/quadext.hpp"

namespace sgnash {

/// Structured parse failure with field context; commands map it to exit 2.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

nlohmann::json game_to_json(const StochasticGame& game);
StochasticGame game_from_json(const nlohmann::json& j);

nlohmann::json profile_to_json(const StochasticGame& game, const Profile<Rat>& profile);
Profile<Rat> profile_from_json(const StochasticGame& game, const nlohmann::json& j);

nlohmann::json quadext_to_json(const QuadExt& x);
QuadExt quadext_from_json(const nlohmann::json& j);

Rat rat_from_json(const nlohmann::json& j, const std::string& context);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);
nlohmann::json parse_json_file(const std::string& path);

}  // namespace sgnash
