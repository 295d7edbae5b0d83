#include "qoekit/session_store.hpp"

#include "qoekit/error.hpp"
#include "qoekit/io.hpp"

namespace qoekit {

nlohmann::json stamped(nlohmann::json doc) {
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  return doc;
}

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

SessionStore::SessionStore(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path SessionStore::path_for(const std::string& kind, const std::string& name) const {
  if (kind.empty() || name.empty() || name.find('/') != std::string::npos || name.find("..") != std::string::npos) {
    throw ValidationError("invalid session document name '" + kind + "/" + name + "'");
  }
  return root_ / kind / (name + ".json");
}

std::filesystem::path SessionStore::save(const std::string& kind, const std::string& name,
                                         const nlohmann::json& doc) const {
  const auto path = path_for(kind, name);
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create '" + path.parent_path().string() + "'");
  io::write_file_atomic(path, dump_json(stamped(doc)));
  return path;
}

nlohmann::json SessionStore::load(const std::string& kind, const std::string& name) const {
  const auto path = path_for(kind, name);
  try {
    return nlohmann::json::parse(io::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace qoekit
