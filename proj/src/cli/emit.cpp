#include "germlab/cli.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

namespace germlab::cli {

using nlohmann::json;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::Resource, "sha256 digest failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

std::string emit_json(const Report& report) { return report.document.dump(2) + "\n"; }

namespace {

std::string leaf(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void flatten(const json& v, const std::string& prefix, std::ostringstream& out) {
  if (v.is_object()) {
    for (const auto& [k, sub] : v.items()) flatten(sub, prefix.empty() ? k : prefix + "." + k, out);
  } else if (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array())) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (v.is_array()) {
    std::string joined;
    for (const auto& x : v) joined += (joined.empty() ? "" : ", ") + leaf(x);
    out << "  " << prefix << " = [" << joined << "]\n";
  } else {
    out << "  " << prefix << " = " << leaf(v) << "\n";
  }
}

}  // namespace

std::string emit_text(const Report& report) {
  const json& doc = report.document;
  std::ostringstream out;
  if (doc.contains("task")) out << "task: " << leaf(doc["task"]) << "\n";
  out << "status: " << leaf(doc["status"]) << "\n";
  if (doc.contains("error")) {
    const auto& e = doc["error"];
    out << "error: " << leaf(e["code"]) << " (exit " << leaf(e["exit_code"]) << "): " << leaf(e["message"]) << "\n";
  }
  if (doc.contains("values")) {
    out << "values:\n";
    flatten(doc["values"], "", out);
  }
  if (doc.contains("seed")) {
    out << "seed " << leaf(doc["seed"]) << ", bound " << leaf(doc["bound"]) << ", trials " << leaf(doc["trials"])
        << "\n";
  }
  if (doc.contains("certification") && !doc["certification"].empty()) {
    out << "certified choices:\n";
    for (const auto& c : doc["certification"]) {
      out << "  " << leaf(c["what"]) << " = " << leaf(c["value"]) << " (bound " << leaf(c["bound"])
          << (c["bound_doubled"] == "true" ? ", doubled" : "") << ")\n";
    }
  }
  if (doc.contains("notes")) {
    out << "notes:\n";
    for (const auto& n : doc["notes"]) out << "  - " << leaf(n) << "\n";
  }
  if (doc.contains("timings_ms")) {
    out << "timings (ms):\n";
    flatten(doc["timings_ms"], "", out);
  }
  return out.str();
}

}  // namespace germlab::cli
