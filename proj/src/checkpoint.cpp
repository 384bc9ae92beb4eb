#include "bzl/checkpoint.hpp"

#include <json.hpp>

#include <cstdio>

namespace bzl {

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::map<std::uint64_t, UnitCounts> load_checkpoint(const std::filesystem::path& path, const std::string& fingerprint,
                                                    std::size_t thresholds) {
  std::map<std::uint64_t, UnitCounts> done;
  if (!std::filesystem::exists(path)) return done;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path.string());

  std::string line;
  std::uintmax_t good_bytes = 0;
  bool torn = false;
  while (std::getline(in, line)) {
    const bool terminated = !in.eof();
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      // Only an interrupted last write may be malformed.
      if (in.peek() == std::char_traits<char>::eof()) {
        torn = true;
        break;
      }
      throw std::runtime_error("checkpoint " + path.string() + " has a corrupt record");
    }
    if (!terminated) {
      torn = true;
      break;
    }
    if (rec.at("fingerprint").get<std::string>() != fingerprint)
      throw CheckpointMismatch("checkpoint " + path.string() + " was written for a different configuration (fingerprint " +
                               rec.at("fingerprint").get<std::string>() + ", expected " + fingerprint + ")");
    UnitCounts u;
    u.unit_id = rec.at("unit").get<std::uint64_t>();
    u.counts = rec.at("counts").get<std::vector<std::uint64_t>>();
    u.baseline = rec.at("baseline").get<std::vector<std::uint64_t>>();
    if (u.counts.size() != thresholds || u.baseline.size() != thresholds)
      throw std::runtime_error("checkpoint record has wrong threshold count");
    done[u.unit_id] = std::move(u);
    good_bytes += line.size() + 1;
  }
  in.close();
  if (torn) std::filesystem::resize_file(path, good_bytes);
  return done;
}

CheckpointWriter::CheckpointWriter(const std::filesystem::path& path, std::string fingerprint)
    : out_(path, std::ios::app | std::ios::binary), fingerprint_(std::move(fingerprint)) {
  if (!out_) throw std::runtime_error("cannot open checkpoint " + path.string() + " for writing");
}

void CheckpointWriter::append(const UnitCounts& unit) {
  nlohmann::json rec{{"unit", unit.unit_id},
                     {"fingerprint", fingerprint_},
                     {"counts", unit.counts},
                     {"baseline", unit.baseline}};
  out_ << rec.dump() << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("checkpoint write failed");
}

}  // namespace bzl
