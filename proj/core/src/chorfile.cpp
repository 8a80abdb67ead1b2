#include "dancing/chorfile.hpp"

#include <string>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "dancing/counter.hpp"

namespace dancing {
namespace {

using nlohmann::json;

// Similarity test guarded against total-cardinality mismatch (which is
// reported separately).
bool similar_safe(const Pattern& a, const Pattern& b) {
  if (a.total_cardinality() != b.total_cardinality()) return false;
  return similar(a, b).has_value();
}

Pattern pattern_from_json(const json& node, std::size_t pattern_index) {
  if (!node.is_array() || node.empty()) {
    throw std::runtime_error("choreography file: pattern " + std::to_string(pattern_index) +
        " must be a non-empty list of [x, y, cardinality] triples");
  }
  std::vector<Multivertex> vertices;
  vertices.reserve(node.size());
  for (const json& entry : node) {
    if (!entry.is_array() || entry.size() != 3 ||
        !entry[0].is_number() || !entry[1].is_number() ||
        !entry[2].is_number_integer()) {
      throw std::runtime_error("choreography file: pattern " + std::to_string(pattern_index) +
          " holds a malformed vertex; expected [x, y, cardinality]");
    }
    const int card = entry[2].get<int>();
    if (card <= 0) {
      throw std::runtime_error("choreography file: pattern " + std::to_string(pattern_index) +
          " holds a vertex with non-positive cardinality");
    }
    vertices.push_back(
        {Point{entry[0].get<double>(), entry[1].get<double>()}, card});
  }
  return Pattern(vertices);
}

}  // namespace

std::int64_t q_max(int n, int k) {
  if (n < 3) throw std::invalid_argument("n must be at least 3");
  if (k < 4) throw std::invalid_argument("k must be at least 4");
  return capacity(n - 3, k - 3);
}

ValidationReport validate(const Choreography& c, int n, int k) {
  ValidationReport report;
  if (n < 3) report.violations.push_back("swarm too small (n < 3)");
  if (k < 4) report.violations.push_back("palette too small (k < 4)");

  const std::size_t q = c.length();
  for (std::size_t i = 0; i < q; ++i) {
    if (c.patterns[i].total_cardinality() != n) {
      report.violations.push_back(
          "cardinality mismatch at pattern " + std::to_string(i));
    }
  }

  for (std::size_t i = 0; i + 1 < q; ++i) {
    if (similar_safe(c.patterns[i], c.patterns[i + 1])) {
      report.violations.push_back("consecutive similarity between patterns " + std::to_string(i) +
          " and " + std::to_string(i + 1));
    }
  }
  if (c.periodic && q >= 1) {
    if (q == 1 || similar_safe(c.patterns[q - 1], c.patterns[0])) {
      report.violations.push_back("consecutive similarity between patterns " + std::to_string(q - 1) +
          " and 0");
    }
  }

  if (c.periodic) {
    for (std::size_t h = 1; h < q; ++h) {
      if (q % h != 0) continue;
      bool periodic_with_h = true;
      for (std::size_t i = 0; i < q && periodic_with_h; ++i) {
        periodic_with_h = similar_safe(c.patterns[i], c.patterns[(i + h) % q]);
      }
      if (periodic_with_h) {
        report.violations.push_back(
            "sub-periodicity with period " + std::to_string(h));
      }
    }
  }

  if (n >= 3 && k >= 4) {
    const std::int64_t limit = q_max(n, k);
    if (static_cast<std::int64_t>(q) > limit) {
      report.violations.push_back("choreography length " + std::to_string(q) + " exceeds limit " +
          std::to_string(limit));
    }
  }
  return report;
}

ChoreographyFile parse_choreography(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(
        std::string("choreography file: ") + e.what());
  }
  if (!doc.is_object()) {
    throw std::runtime_error(
        "choreography file: top level must be an object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "n" && key != "k" && key != "periodic" && key != "patterns") {
      throw std::runtime_error(
          "choreography file: unknown field '" + key + "'");
    }
  }
  for (const char* key : {"n", "k", "periodic", "patterns"}) {
    if (!doc.contains(key)) {
      throw std::runtime_error(
          std::string("choreography file: missing field '") + key + "'");
    }
  }
  if (!doc["n"].is_number_integer() || !doc["k"].is_number_integer()) {
    throw std::runtime_error(
        "choreography file: fields 'n' and 'k' must be integers");
  }
  if (!doc["periodic"].is_boolean()) {
    throw std::runtime_error(
        "choreography file: field 'periodic' must be a boolean");
  }
  if (!doc["patterns"].is_array() || doc["patterns"].empty()) {
    throw std::runtime_error(
        "choreography file: field 'patterns' must be a non-empty list");
  }

  ChoreographyFile file;
  file.n = doc["n"].get<int>();
  file.k = doc["k"].get<int>();
  file.choreography.periodic = doc["periodic"].get<bool>();
  std::size_t index = 0;
  for (const json& pattern : doc["patterns"]) {
    file.choreography.patterns.push_back(pattern_from_json(pattern, index));
    ++index;
  }
  return file;
}

ChoreographyFile load_choreography(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(
        "cannot open choreography file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_choreography(buffer.str());
}

std::string serialize_choreography(const ChoreographyFile& file) {
  json patterns = json::array();
  for (const Pattern& p : file.choreography.patterns) {
    json vertices = json::array();
    for (const Multivertex& mv : p.vertices()) {
      vertices.push_back({mv.position.x, mv.position.y, mv.cardinality});
    }
    patterns.push_back(vertices);
  }
  const json doc{{"n", file.n},
                 {"k", file.k},
                 {"periodic", file.choreography.periodic},
                 {"patterns", patterns}};
  return doc.dump(2) + "\n";
}

void save_choreography(const ChoreographyFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error(
        "cannot write choreography file: " + path);
  }
  out << serialize_choreography(file);
}

}  // namespace dancing
