#include "lapkit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "lapkit/error.hpp"

namespace lapkit {

namespace pt = boost::property_tree;

char boundary_letter(BoundaryKind kind) noexcept {
  switch (kind) {
    case BoundaryKind::Dirichlet: return 'D';
    case BoundaryKind::Neumann: return 'N';
    case BoundaryKind::Repeat: return 'R';
    case BoundaryKind::Symmetry: return 'S';
  }
  return '?';
}

BoundaryKind boundary_from_letter(std::string_view letter) {
  if (letter == "D") return BoundaryKind::Dirichlet;
  if (letter == "N") return BoundaryKind::Neumann;
  if (letter == "R") return BoundaryKind::Repeat;
  if (letter == "S") return BoundaryKind::Symmetry;
  throw Error(ErrorCode::InvalidValue, "unknown boundary type '" + std::string(letter) + "'");
}

char axis_label(Axis axis) noexcept { return "xyz"[static_cast<int>(axis)]; }

void MeshSpec::validate() const {
  const std::string where = std::string("mesh ") + axis_label(direction) + ": ";
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidValue, where + "length must be positive");
  if (ntotal < 2) throw Error(ErrorCode::InvalidValue, where + "ntotal must be >= 2");
  if (nclust < 0) throw Error(ErrorCode::InvalidValue, where + "nclust must be >= 0");
  if (cltype != 1 && cltype != 2) throw Error(ErrorCode::InvalidValue, where + "cltype must be 1 or 2");
  if (!(cratio >= 1.0)) throw Error(ErrorCode::InvalidValue, where + "cratio must be >= 1");
  if (nclust > 1) {
    const int nu = cltype == 2 ? ntotal - 2 * nclust + 2 : ntotal - nclust + 1;
    if (nu < 2) throw Error(ErrorCode::InvalidValue, where + "uniform region has fewer than 2 points");
  }
  const bool lo_rep = btype[0] == BoundaryKind::Repeat;
  const bool hi_rep = btype[1] == BoundaryKind::Repeat;
  if (lo_rep != hi_rep) throw Error(ErrorCode::InvalidValue, where + "Repeat must be set on both ends");
  if (degfix < 0 || degfix >= ntotal) throw Error(ErrorCode::InvalidValue, where + "degfix out of range");
}

void CaseConfig::validate() const {
  if (name.empty()) throw Error(ErrorCode::InvalidValue, "case name is empty");
  if (name.find_first_of("/\\:*?\"<>| \t\n") != std::string::npos) {
    throw Error(ErrorCode::InvalidValue, "case name '" + name + "' is not a usable file stem");
  }
  if (dimension < 1 || dimension > 3) throw Error(ErrorCode::InvalidValue, "dimension must be 1, 2 or 3");
  if (static_cast<int>(meshes.size()) != dimension) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(meshes.size()) +
                                                  " mesh sections for dimension " + std::to_string(dimension));
  }
  for (int d = 0; d < dimension; ++d) {
    if (meshes[d].direction != static_cast<Axis>(d)) {
      throw Error(ErrorCode::InvalidValue, "mesh sections must cover x, y, z in order without repeats");
    }
    meshes[d].validate();
  }
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(trim(std::string_view(text).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

double to_real(const std::string& raw, const std::string& field) {
  const std::string s = trim(raw);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::InvalidValue, field + ": '" + s + "' is not a real number");
  }
  return value;
}

int to_int(const std::string& raw, const std::string& field) {
  const std::string s = trim(raw);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::InvalidValue, field + ": '" + s + "' is not an integer");
  }
  return value;
}

std::string required(const pt::ptree& node, const std::string& path, const std::string& what) {
  const auto child = node.get_optional<std::string>(path);
  if (!child) throw Error(ErrorCode::MissingField, what + " is missing");
  return *child;
}

MeshSpec parse_mesh(const pt::ptree& node) {
  MeshSpec spec;
  const std::string dir = trim(required(node, "<xmlattr>.direction", "mesh direction"));
  if (dir == "x") {
    spec.direction = Axis::X;
  } else if (dir == "y") {
    spec.direction = Axis::Y;
  } else if (dir == "z") {
    spec.direction = Axis::Z;
  } else {
    throw Error(ErrorCode::InvalidValue, "mesh direction '" + dir + "'");
  }
  const std::string tag = std::string("mesh ") + dir + " ";
  spec.length = to_real(required(node, "length", tag + "length"), tag + "length");
  spec.ntotal = to_int(required(node, "ntotal", tag + "ntotal"), tag + "ntotal");
  spec.nclust = to_int(required(node, "nclust", tag + "nclust"), tag + "nclust");
  spec.cltype = to_int(required(node, "cltype", tag + "cltype"), tag + "cltype");
  spec.cratio = to_real(required(node, "cratio", tag + "cratio"), tag + "cratio");

  const auto kinds = split_list(required(node, "btype", tag + "btype"));
  if (kinds.size() < 2) throw Error(ErrorCode::MissingField, tag + "btype needs one entry per end");
  if (kinds.size() > 2) throw Error(ErrorCode::InvalidValue, tag + "btype has more than two entries");
  const auto values = split_list(required(node, "bvalue", tag + "bvalue"));
  if (values.size() < 2) throw Error(ErrorCode::MissingField, tag + "bvalue needs one entry per end");
  if (values.size() > 2) throw Error(ErrorCode::InvalidValue, tag + "bvalue has more than two entries");
  for (int side = 0; side < 2; ++side) {
    spec.btype[side] = boundary_from_letter(kinds[side]);
    spec.bvalue[side] = to_real(values[side], tag + "bvalue");
  }
  if (const auto fix = node.get_optional<std::string>("degfix")) spec.degfix = to_int(*fix, tag + "degfix");
  return spec;
}

}  // namespace

CaseConfig parse_case(const std::string& xml_text) {
  pt::ptree tree;
  try {
    std::istringstream in(xml_text);
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::MalformedXml, e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  const auto root = tree.get_child_optional("laplace");
  if (!root) throw Error(ErrorCode::MissingField, "root element <laplace> is missing");

  CaseConfig config;
  const auto case_node = root->get_child_optional("case");
  if (!case_node) throw Error(ErrorCode::MissingField, "<case> element is missing");
  config.name = trim(required(*case_node, "<xmlattr>.name", "case name"));
  config.dimension = to_int(required(*case_node, "<xmlattr>.dimension", "case dimension"), "dimension");
  config.force = to_real(required(*case_node, "<xmlattr>.force", "case force"), "force");
  for (const auto& [key, child] : *root) {
    if (key == "mesh") config.meshes.push_back(parse_mesh(child));
  }
  std::stable_sort(config.meshes.begin(), config.meshes.end(),
                   [](const MeshSpec& a, const MeshSpec& b) { return a.direction < b.direction; });
  config.validate();
  return config;
}

CaseConfig load_case(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_case(text.str());
}

namespace {

std::string real_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string to_xml(const CaseConfig& config) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<laplace>\n";
  out << "  <case name=\"" << escape(config.name) << "\" dimension=\"" << config.dimension << "\" force=\""
      << real_text(config.force) << "\"></case>\n";
  for (const auto& m : config.meshes) {
    out << "  <mesh direction=\"" << axis_label(m.direction) << "\">\n";
    out << "    <length>" << real_text(m.length) << "</length>\n";
    out << "    <ntotal>" << m.ntotal << "</ntotal>\n";
    out << "    <nclust>" << m.nclust << "</nclust>\n";
    out << "    <cltype>" << m.cltype << "</cltype>\n";
    out << "    <cratio>" << real_text(m.cratio) << "</cratio>\n";
    out << "    <btype>" << boundary_letter(m.btype[0]) << ", " << boundary_letter(m.btype[1]) << "</btype>\n";
    out << "    <bvalue>" << real_text(m.bvalue[0]) << ", " << real_text(m.bvalue[1]) << "</bvalue>\n";
    out << "    <degfix>" << m.degfix << "</degfix>\n";
    out << "  </mesh>\n";
  }
  out << "</laplace>\n";
  return out.str();
}

}  // namespace lapkit
