#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bigrasp/errors.hpp"
#include "bigrasp/mesh.hpp"

namespace bigrasp {

namespace {

struct RawMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
};

int resolve_obj_index(const std::string& token, int vertex_count, int line_no) {
  // "i", "i/j", "i//k", "i/j/k"; negative indices are relative to the end.
  const std::size_t slash = token.find('/');
  const std::string head = slash == std::string::npos ? token : token.substr(0, slash);
  int idx = 0;
  try {
    idx = std::stoi(head);
  } catch (const std::exception&) {
    throw IoError("OBJ line " + std::to_string(line_no) + ": bad face index '" +
                  token + "'");
  }
  if (idx < 0) idx = vertex_count + idx + 1;
  if (idx < 1 || idx > vertex_count) {
    throw IoError("OBJ line " + std::to_string(line_no) + ": face index " + head +
                  " out of range");
  }
  return idx - 1;
}

RawMesh parse_obj(std::istream& in) {
  RawMesh mesh;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      double x = 0, y = 0, z = 0;
      if (!(ls >> x >> y >> z)) {
        throw IoError("OBJ line " + std::to_string(line_no) + ": bad vertex");
      }
      mesh.vertices.emplace_back(x, y, z);  // trailing colors ignored
    } else if (tag == "f") {
      std::vector<int> poly;
      std::string token;
      while (ls >> token) {
        poly.push_back(resolve_obj_index(token, static_cast<int>(mesh.vertices.size()),
                                         line_no));
      }
      if (poly.size() < 3) {
        throw IoError("OBJ line " + std::to_string(line_no) +
                      ": face needs at least 3 vertices");
      }
      for (std::size_t k = 2; k < poly.size(); ++k) {
        mesh.faces.push_back({poly[0], poly[k - 1], poly[k]});
      }
    }
    // vn/vt/o/g/s/usemtl/mtllib are ignored; normals are recomputed.
  }
  return mesh;
}

// STL triangles carry no connectivity, so identical float coordinates are
// welded back into shared vertices.
struct VertexWelder {
  std::map<std::array<float, 3>, int> seen;
  std::vector<Vec3> vertices;

  int add(float x, float y, float z) {
    const std::array<float, 3> key{x, y, z};
    const auto [it, inserted] = seen.try_emplace(key, static_cast<int>(vertices.size()));
    if (inserted) vertices.emplace_back(x, y, z);
    return it->second;
  }
};

RawMesh parse_stl_ascii(std::istream& in) {
  RawMesh mesh;
  VertexWelder welder;
  std::string token;
  std::array<int, 3> tri{};
  int corner = 0;
  bool any_facet = false;
  while (in >> token) {
    std::transform(token.begin(), token.end(), token.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (token == "facet") any_facet = true;
    if (token != "vertex") continue;
    float x = 0, y = 0, z = 0;
    if (!(in >> x >> y >> z)) throw IoError("ASCII STL: bad vertex triple");
    tri[corner++] = welder.add(x, y, z);
    if (corner == 3) {
      mesh.faces.push_back(tri);
      corner = 0;
    }
  }
  if (!any_facet) throw IoError("ASCII STL: no facets found");
  if (corner != 0) throw IoError("ASCII STL: dangling vertex list");
  mesh.vertices = std::move(welder.vertices);
  return mesh;
}

RawMesh parse_stl_binary(const std::vector<char>& bytes) {
  if (bytes.size() < 84) throw IoError("binary STL shorter than its header");
  std::uint32_t count = 0;
  std::memcpy(&count, bytes.data() + 80, 4);
  const std::size_t expected = 84 + static_cast<std::size_t>(count) * 50;
  if (bytes.size() < expected) {
    throw IoError("binary STL truncated: " + std::to_string(bytes.size()) +
                  " bytes, need " + std::to_string(expected));
  }
  RawMesh mesh;
  VertexWelder welder;
  mesh.faces.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const char* rec = bytes.data() + 84 + static_cast<std::size_t>(i) * 50;
    float v[9];
    std::memcpy(v, rec + 12, 9 * sizeof(float));  // skip the stored normal
    mesh.faces.push_back({welder.add(v[0], v[1], v[2]),
                          welder.add(v[3], v[4], v[5]),
                          welder.add(v[6], v[7], v[8])});
  }
  mesh.vertices = std::move(welder.vertices);
  return mesh;
}

bool looks_like_ascii_stl(const std::vector<char>& bytes) {
  if (bytes.size() < 6 || std::strncmp(bytes.data(), "solid", 5) != 0) return false;
  // some binary exporters still write "solid": require a "facet" in the body
  const std::string head(bytes.data(), std::min<std::size_t>(bytes.size(), 4096));
  return head.find("facet") != std::string::npos;
}

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

}  // namespace

TriangleMesh load_mesh(const std::filesystem::path& path, double scale) {
  if (scale <= 0.0) throw ConfigError("mesh scale must be positive, got " +
                                      std::to_string(scale));
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open mesh file: " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(file)),
                          std::istreambuf_iterator<char>());
  if (bytes.empty()) throw IoError("mesh file is empty: " + path.string());

  RawMesh raw;
  const std::string ext = lower_extension(path);
  try {
    if (ext == ".obj") {
      std::istringstream in(std::string(bytes.data(), bytes.size()));
      raw = parse_obj(in);
    } else if (ext == ".stl") {
      if (looks_like_ascii_stl(bytes)) {
        std::istringstream in(std::string(bytes.data(), bytes.size()));
        raw = parse_stl_ascii(in);
      } else {
        raw = parse_stl_binary(bytes);
      }
    } else {
      throw IoError("unsupported mesh format '" + ext + "' (expected .obj or .stl)");
    }
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }

  if (raw.faces.empty()) throw IoError(path.string() + ": no faces parsed");
  if (scale != 1.0) {
    for (Vec3& v : raw.vertices) v *= scale;
  }
  return TriangleMesh(std::move(raw.vertices), std::move(raw.faces));
}

}  // namespace bigrasp
