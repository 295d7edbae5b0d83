#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace qoekit {

inline constexpr const char* kToolName = "qoekit";
inline constexpr const char* kToolVersion = QOEKIT_VERSION;

// Adds {"tool": {"name", "version"}} to a document.
nlohmann::json stamped(nlohmann::json doc);

// Directory of JSON documents grouped by kind (judgments, weights, reports).
// Writes are atomic; documents are serialized with sorted keys so identical
// content produces identical bytes.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path root);

  std::filesystem::path save(const std::string& kind, const std::string& name, const nlohmann::json& doc) const;
  nlohmann::json load(const std::string& kind, const std::string& name) const;
  std::filesystem::path path_for(const std::string& kind, const std::string& name) const;
  const std::filesystem::path& root() const noexcept { return root_; }

 private:
  std::filesystem::path root_;
};

std::string dump_json(const nlohmann::json& doc);

}  // namespace qoekit
