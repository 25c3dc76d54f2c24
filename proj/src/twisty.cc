#include <cctype>
#include <istream>

#include "json.hpp"
#include "stylo/corpus.h"
#include "stylo/error.h"

namespace stylo {
namespace {

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::optional<Gender> ParseTwistyGender(const nlohmann::json& j) {
  if (!j.is_string()) return std::nullopt;
  const std::string g = Lower(j.get<std::string>());
  if (g == "f" || g == "female") return Gender::kFemale;
  if (g == "m" || g == "male") return Gender::kMale;
  return std::nullopt;
}

std::string StringField(const nlohmann::json& obj,
                        std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    if (obj.contains(k) && obj[k].is_string()) return obj[k].get<std::string>();
  }
  return {};
}

}  // namespace

std::vector<Author> ParseTwisty(std::istream& in, std::string_view default_lang,
                                std::vector<std::string>* skipped) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("TwiSty input is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("TwiSty input must be a JSON object");

  std::string lang_default(default_lang);
  const nlohmann::json* users = &doc;
  if (doc.contains("users") && doc["users"].is_object()) {
    users = &doc["users"];
    if (auto l = StringField(doc, {"lang", "language"}); !l.empty()) {
      lang_default = l;
    }
  }
  const auto skip = [skipped](const std::string& id, const std::string& why) {
    if (skipped) skipped->push_back("user '" + id + "': " + why);
  };

  std::vector<Author> authors;
  for (const auto& [id, user] : users->items()) {
    if (!user.is_object()) {
      skip(id, "entry is not an object");
      continue;
    }
    Author a;
    a.id = id;
    if (!user.contains("gender")) {
      skip(id, "no gender");
      continue;
    }
    auto gender = ParseTwistyGender(user["gender"]);
    if (!gender) {
      skip(id, "unrecognized gender");
      continue;
    }
    a.gender = *gender;
    a.language = Lower(StringField(user, {"lang", "language"}));
    if (a.language.empty()) a.language = Lower(lang_default);
    if (!IsValidLanguageCode(a.language)) {
      skip(id, "no usable language code");
      continue;
    }
    if (user.contains("tweets") && user["tweets"].is_array()) {
      for (const auto& t : user["tweets"]) {
        if (t.is_string()) {
          a.tweets.push_back(t.get<std::string>());
        } else if (t.is_object()) {
          auto text = StringField(t, {"text", "full_text"});
          if (!text.empty()) a.tweets.push_back(std::move(text));
        }
      }
    }
    if (a.tweets.empty()) {
      skip(id, "no tweet texts");
      continue;
    }
    authors.push_back(std::move(a));
  }
  return authors;
}

}  // namespace stylo
