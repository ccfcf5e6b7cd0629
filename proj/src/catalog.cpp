#include "cayleycast/catalog.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cayleycast/bounds.hpp"
#include "cayleycast/error.hpp"

namespace cayleycast {

namespace {

std::string canonical_fields(const CatalogRecord& rec) {
  std::ostringstream s;
  s << rec.delta << '|' << rec.time << '|' << rec.order << '|' << rec.group << '|'
    << rec.generators << '|' << rec.scheme << '|' << rec.rounds << '|' << rec.note;
  return s.str();
}

/// Holds an exclusive advisory lock on `<path>.lock` for its lifetime.
class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path) {
    const std::string lock_path = path.string() + ".lock";
    fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0) throw Error("cannot open lock file " + lock_path);
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw Error("cannot lock " + lock_path);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }

 private:
  int fd_ = -1;
};

}  // namespace

std::string record_checksum(const CatalogRecord& rec) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical_fields(rec)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CatalogRecord seal(CatalogRecord rec) {
  rec.checksum = record_checksum(rec);
  return rec;
}

CatalogRecord to_record(const FamilyWitness& w, unsigned achieved_rounds, std::string note) {
  CatalogRecord rec;
  rec.delta = w.delta;
  rec.time = w.time;
  rec.order = w.expected_order;
  rec.group = w.group.to_string();
  rec.generators = format_generators(w.group, w.generators);
  rec.scheme = format_scheme(w.group, w.scheme);
  rec.rounds = achieved_rounds;
  rec.note = std::move(note);
  return seal(std::move(rec));
}

FamilyWitness to_witness(const CatalogRecord& rec) {
  FamilyWitness w;
  w.family = "catalog";
  w.delta = rec.delta;
  w.time = rec.time;
  w.group = parse_group_spec(rec.group);
  w.generators = parse_generators(w.group, rec.generators);
  w.scheme = parse_scheme(w.group, rec.scheme);
  w.expected_order = rec.order;
  w.expected_round = rec.rounds;
  w.claims_optimal = false;
  return w;
}

std::string to_json_line(const CatalogRecord& rec) {
  nlohmann::ordered_json j;
  j["delta"] = rec.delta;
  j["time"] = rec.time;
  j["order"] = rec.order;
  j["group"] = rec.group;
  j["generators"] = rec.generators;
  j["scheme"] = rec.scheme;
  j["rounds"] = rec.rounds;
  j["note"] = rec.note;
  j["checksum"] = rec.checksum;
  return j.dump();
}

CatalogRecord from_json_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed catalog line: ") + e.what(), e.byte);
  }
  CatalogRecord rec;
  try {
    rec.delta = j.at("delta").get<unsigned>();
    rec.time = j.at("time").get<unsigned>();
    rec.order = j.at("order").get<std::uint64_t>();
    rec.group = j.at("group").get<std::string>();
    rec.generators = j.at("generators").get<std::string>();
    rec.scheme = j.at("scheme").get<std::string>();
    rec.rounds = j.at("rounds").get<unsigned>();
    rec.note = j.value("note", "");
    rec.checksum = j.value("checksum", "");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed catalog record: ") + e.what(), 0);
  }
  return rec;
}

RecordReport verify_record(const CatalogRecord& rec, std::uint64_t limit) {
  RecordReport report;
  auto& why = report.reasons;
  if (rec.checksum != record_checksum(rec)) why.push_back("checksum mismatch");
  if (rec.delta < 1 || rec.time < 1) {
    why.push_back("delta and time must be at least 1");
    return report;
  }

  const Count bound = moore_bound(rec.delta, rec.time);
  if (Count(rec.order) > bound) {
    why.push_back("order " + std::to_string(rec.order) + " exceeds M(" + std::to_string(rec.delta) +
                  "," + std::to_string(rec.time) + ")=" + bound.str());
  }
  report.optimal = Count(rec.order) == bound;

  GroupSpec group = GroupSpec::cyclic(1);
  try {
    group = parse_group_spec(rec.group);
  } catch (const Error& e) {
    why.push_back(std::string("bad group: ") + e.what());
    return report;
  }
  GeneratorSet gens;
  try {
    gens = parse_generators(group, rec.generators);
  } catch (const NotAMember&) {
    why.push_back("generator not in group");
    return report;
  } catch (const Error& e) {
    why.push_back(std::string("bad generators: ") + e.what());
    return report;
  }
  BroadcastScheme scheme;
  try {
    scheme = parse_scheme(group, rec.scheme);
  } catch (const Error& e) {
    why.push_back(std::string("bad scheme: ") + e.what());
    return report;
  }
  if (group.order() > limit) {
    why.push_back(group.to_string() + " exceeds the order limit");
    return report;
  }
  if (group.order() != rec.order) {
    why.push_back("order mismatch: group has " + std::to_string(group.order()) + ", record says " +
                  std::to_string(rec.order));
  }
  if (gens.size() > rec.delta) {
    why.push_back("degree " + std::to_string(gens.size()) + " exceeds delta " +
                  std::to_string(rec.delta));
  }
  const GeneratorReport gr = validate_generators(group, gens, limit);
  if (!gr.ok()) {
    for (const auto& p : gr.problems) why.push_back(p);
    return report;
  }

  const CayleyGraph cg = build_cayley(group, gens, limit);
  try {
    SimulationOptions opts;
    opts.max_rounds = std::max(rec.time + 1, default_max_rounds(cg.vertex_count(), cg.degree()));
    const auto done = broadcast_time_under_scheme(cg, scheme, opts);
    if (!done) {
      why.push_back("incomplete after " + std::to_string(*opts.max_rounds) + " rounds");
    } else {
      report.achieved_rounds = *done;
      if (*done > rec.time) {
        why.push_back("completion exceeds t: " + std::to_string(*done) + " > " +
                      std::to_string(rec.time));
      }
      if (*done != rec.rounds) {
        why.push_back("rounds mismatch: replay gives " + std::to_string(*done) + ", record says " +
                      std::to_string(rec.rounds));
      }
    }
  } catch (const SchemeMismatch& e) {
    why.push_back(std::string("scheme mismatch: ") + e.what());
  }
  report.passed = why.empty();
  return report;
}

Catalog Catalog::load(const std::filesystem::path& path) {
  Catalog cat;
  std::ifstream in(path);
  if (!in) return cat;  // a missing file is an empty catalog
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    CatalogRecord rec = from_json_line(line);
    const Key key{rec.delta, rec.time};
    auto it = cat.records_.find(key);
    if (it == cat.records_.end() || it->second.order < rec.order) cat.records_[key] = std::move(rec);
  }
  return cat;
}

void Catalog::save(const std::filesystem::path& path) const {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    for (const auto& [key, rec] : records_) out << to_json_line(rec) << '\n';
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

const CatalogRecord* Catalog::find(unsigned delta, unsigned time) const {
  const auto it = records_.find({delta, time});
  return it == records_.end() ? nullptr : &it->second;
}

Catalog::UpdateResult Catalog::offer(const CatalogRecord& rec, std::uint64_t limit) {
  const RecordReport report = verify_record(rec, limit);
  if (!report.passed) {
    std::string reason;
    for (const auto& r : report.reasons) reason += (reason.empty() ? "" : "; ") + r;
    return {Outcome::rejected, reason};
  }
  const Key key{rec.delta, rec.time};
  auto it = records_.find(key);
  if (it == records_.end()) {
    records_.emplace(key, rec);
    return {Outcome::inserted, ""};
  }
  if (rec.order > it->second.order) {
    it->second = rec;
    return {Outcome::replaced, ""};
  }
  return {Outcome::kept_existing, "existing record has order " + std::to_string(it->second.order)};
}

Catalog::UpdateResult catalog_update(const std::filesystem::path& path, const CatalogRecord& rec,
                                     std::uint64_t limit) {
  FileLock lock(path);
  Catalog cat = Catalog::load(path);
  auto result = cat.offer(rec, limit);
  if (result.outcome == Catalog::Outcome::inserted || result.outcome == Catalog::Outcome::replaced) {
    cat.save(path);
  }
  return result;
}

bool CatalogReport::all_passed() const noexcept {
  return std::all_of(entries.begin(), entries.end(),
                     [](const auto& e) { return e.second.passed; });
}

CatalogReport catalog_verify(const std::filesystem::path& path, std::uint64_t limit) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read catalog " + path.string());
  CatalogReport report;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    CatalogRecord rec = from_json_line(line);
    RecordReport rr = verify_record(rec, limit);
    report.entries.emplace_back(std::move(rec), std::move(rr));
  }
  return report;
}

Catalog seed_catalog(const SeedOptions& options) {
  std::map<Catalog::Key, std::pair<FamilyWitness, std::string>> best;
  auto propose = [&](FamilyWitness w, std::string note) {
    if (w.delta > options.max_delta || w.time > options.max_time) return;
    const Catalog::Key key{w.delta, w.time};
    auto it = best.find(key);
    if (it == best.end() || it->second.first.expected_order < w.expected_order) {
      best.insert_or_assign(key, std::make_pair(std::move(w), std::move(note)));
    }
  };
  for (unsigned d = 1; d <= options.hypercube_max; ++d) {
    propose(hypercube_family(d), "hypercube_family(" + std::to_string(d) + ")");
  }
  for (unsigned d = options.dihedral_min; d <= options.dihedral_max; ++d) {
    propose(dihedral_family(d), "dihedral_family(" + std::to_string(d) + ")");
  }
  for (unsigned t = 2; t <= options.cycle_max_time; ++t) {
    propose(cycle_family(t), "cycle_family(" + std::to_string(t) + ")");
  }
  // products only move to larger delta, so one ordered pass reaches the fixpoint
  for (auto it = best.begin(); it != best.end(); ++it) {
    const auto& [w, note] = it->second;
    if (w.delta + 1 > options.max_delta || w.time + 1 > options.max_time) continue;
    if (auto lifted = lift_through_k2(w)) propose(std::move(*lifted), "K2 product of " + note);
  }

  Catalog cat;
  for (const auto& [key, entry] : best) {
    const auto& [w, note] = entry;
    const VerificationReport vr = verify_family_witness(w);
    const unsigned rounds =
        vr.trace && vr.trace->completion_round ? *vr.trace->completion_round : w.expected_round;
    const auto result = cat.offer(to_record(w, rounds, note));
    if (result.outcome == Catalog::Outcome::rejected) {
      throw Error("seed record " + note + " rejected: " + result.reason);
    }
  }
  return cat;
}

std::string render_catalog(const Catalog& catalog, CatalogFormat format) {
  std::ostringstream out;
  if (format == CatalogFormat::json_lines) {
    for (const auto& [key, rec] : catalog.records()) out << to_json_line(rec) << '\n';
    return out.str();
  }
  if (format == CatalogFormat::tsv) {
    out << "delta\ttime\torder\tbound\toptimal\tgroup\tgenerators\tscheme\trounds\tnote\n";
    for (const auto& [key, rec] : catalog.records()) {
      const Count bound = moore_bound(rec.delta, rec.time);
      out << rec.delta << '\t' << rec.time << '\t' << rec.order << '\t' << bound << '\t'
          << (Count(rec.order) == bound ? "yes" : "no") << '\t' << rec.group << '\t'
          << rec.generators << '\t' << rec.scheme << '\t' << rec.rounds << '\t' << rec.note << '\n';
    }
    return out.str();
  }
  if (catalog.records().empty()) return "(empty catalog)\n";

  unsigned dmin = ~0U, dmax = 0, tmin = ~0U, tmax = 0;
  for (const auto& [key, rec] : catalog.records()) {
    dmin = std::min(dmin, key.first);
    dmax = std::max(dmax, key.first);
    tmin = std::min(tmin, key.second);
    tmax = std::max(tmax, key.second);
  }
  std::vector<std::vector<std::string>> cells;
  std::size_t width = 4;
  for (unsigned d = dmin; d <= dmax; ++d) {
    auto& row = cells.emplace_back();
    for (unsigned t = tmin; t <= tmax; ++t) {
      std::string cell;
      if (d <= t) {
        if (const CatalogRecord* rec = catalog.find(d, t)) {
          cell = std::to_string(rec->order);
          if (Count(rec->order) == moore_bound(d, t)) cell = "**" + cell + "**";
        } else {
          cell = "-";
        }
      }
      width = std::max(width, cell.size());
      row.push_back(std::move(cell));
    }
  }
  auto pad = [&](const std::string& s) { return std::string(width + 1 - s.size(), ' ') + s; };
  out << pad("d/t");
  for (unsigned t = tmin; t <= tmax; ++t) out << pad(std::to_string(t));
  out << '\n';
  for (unsigned d = dmin; d <= dmax; ++d) {
    out << pad(std::to_string(d));
    for (const auto& cell : cells[d - dmin]) out << pad(cell);
    out << '\n';
  }
  return out.str();
}

}  // namespace cayleycast
