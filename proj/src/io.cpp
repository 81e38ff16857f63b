#include "foil/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "foil/error.hpp"

namespace foil {

const char* const kDiagnosticsHeader =
    "iteration,max_displacement,mean_nn_distance,spring_energy,kinetic_energy,"
    "snapped_count,degenerate_face_count";

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

std::string lower_extension(const std::string& path) {
    const std::size_t dot = path.find_last_of('.');
    const std::size_t slash = path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return "";
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& what) {
    throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF line endings everywhere
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("failed while writing '" + path + "'");
}

Vec3 parse_xyz_line(const std::string& path, int line_no, const std::string& line) {
    std::istringstream ss(line);
    double x, y, z;
    if (!(ss >> x >> y >> z)) {
        parse_fail(path, line_no, "expected three coordinates, got '" + line + "'");
    }
    std::string extra;
    if (ss >> extra) {
        parse_fail(path, line_no, "unexpected trailing token '" + extra + "'");
    }
    const Vec3 p{x, y, z};
    if (!is_finite(p)) parse_fail(path, line_no, "non-finite coordinate");
    return p;
}

std::vector<Vec3> load_points_xyz(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<Vec3> points;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || is_blank(line) || line[0] == '#') continue;
        points.push_back(parse_xyz_line(path, line_no, line));
    }
    if (points.empty()) {
        throw DegenerateInputError("'" + path + "' contains no points");
    }
    return points;
}

// --- minimal ASCII PLY reader -------------------------------------------

struct PlyElement {
    std::string name;
    long count = 0;
    std::vector<std::string> properties;  // scalar property names, in order
    bool has_list = false;
    std::string list_name;
};

struct PlyHeader {
    std::vector<PlyElement> elements;
    int header_lines = 0;
};

PlyHeader read_ply_header(const std::string& path, std::ifstream& in) {
    PlyHeader header;
    std::string line;
    int line_no = 0;

    auto next_line = [&]() -> std::string& {
        if (!std::getline(in, line)) parse_fail(path, line_no, "unexpected end of header");
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    };

    if (next_line() != "ply") parse_fail(path, line_no, "missing 'ply' magic");
    bool format_seen = false;
    while (true) {
        next_line();
        std::istringstream ss(line);
        std::string word;
        ss >> word;
        if (word == "comment" || word == "obj_info" || word.empty()) continue;
        if (word == "format") {
            std::string kind;
            ss >> kind;
            if (kind != "ascii") parse_fail(path, line_no, "only ASCII PLY is supported");
            format_seen = true;
        } else if (word == "element") {
            PlyElement el;
            if (!(ss >> el.name >> el.count) || el.count < 0) {
                parse_fail(path, line_no, "malformed element declaration");
            }
            header.elements.push_back(el);
        } else if (word == "property") {
            if (header.elements.empty()) parse_fail(path, line_no, "property before element");
            std::string type;
            ss >> type;
            PlyElement& el = header.elements.back();
            if (type == "list") {
                std::string count_type, value_type, name;
                if (!(ss >> count_type >> value_type >> name)) {
                    parse_fail(path, line_no, "malformed list property");
                }
                el.has_list = true;
                el.list_name = name;
            } else {
                std::string name;
                if (!(ss >> name)) parse_fail(path, line_no, "malformed property");
                el.properties.push_back(name);
            }
        } else if (word == "end_header") {
            break;
        } else {
            parse_fail(path, line_no, "unrecognized header keyword '" + word + "'");
        }
    }
    if (!format_seen) parse_fail(path, line_no, "missing format declaration");
    header.header_lines = line_no;
    return header;
}

std::vector<Vec3> load_points_ply(const std::string& path) {
    std::ifstream in = open_input(path);
    const PlyHeader header = read_ply_header(path, in);
    int line_no = header.header_lines;
    std::vector<Vec3> points;

    for (const PlyElement& el : header.elements) {
        if (el.name == "vertex") {
            if (el.has_list) parse_fail(path, line_no, "list property on vertex element");
            auto idx_of = [&](const char* name) {
                const auto it = std::find(el.properties.begin(), el.properties.end(), name);
                if (it == el.properties.end()) {
                    parse_fail(path, line_no, std::string("vertex element lacks property ") + name);
                }
                return static_cast<std::size_t>(it - el.properties.begin());
            };
            const std::size_t ix = idx_of("x"), iy = idx_of("y"), iz = idx_of("z");
            std::string line;
            for (long v = 0; v < el.count; ++v) {
                if (!std::getline(in, line)) parse_fail(path, line_no, "unexpected end of file");
                ++line_no;
                std::istringstream ss(line);
                std::vector<double> vals(el.properties.size());
                for (double& val : vals) {
                    if (!(ss >> val)) parse_fail(path, line_no, "short vertex row");
                }
                const Vec3 p{vals[ix], vals[iy], vals[iz]};
                if (!is_finite(p)) parse_fail(path, line_no, "non-finite coordinate");
                points.push_back(p);
            }
        } else {
            std::string line;
            for (long v = 0; v < el.count; ++v) {
                if (!std::getline(in, line)) parse_fail(path, line_no, "unexpected end of file");
                ++line_no;
            }
        }
    }
    if (points.empty()) throw DegenerateInputError("'" + path + "' contains no points");
    return points;
}

TriMesh load_mesh_obj(const std::string& path) {
    std::ifstream in = open_input(path);
    TriMesh mesh;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || is_blank(line) || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "v") {
            double x, y, z;
            if (!(ss >> x >> y >> z)) parse_fail(path, line_no, "malformed vertex record");
            const Vec3 p{x, y, z};
            if (!is_finite(p)) parse_fail(path, line_no, "non-finite coordinate");
            mesh.positions.push_back(p);
        } else if (tag == "f") {
            std::vector<int> indices;
            std::string token;
            while (ss >> token) {
                // accept i, i/j, i//k, i/j/k — only the vertex index matters
                const std::size_t slash = token.find('/');
                const std::string head = slash == std::string::npos ? token
                                                                    : token.substr(0, slash);
                int idx = 0;
                try {
                    std::size_t used = 0;
                    idx = std::stoi(head, &used);
                    if (used != head.size()) throw std::invalid_argument(head);
                } catch (const std::exception&) {
                    parse_fail(path, line_no, "bad face index '" + token + "'");
                }
                if (idx <= 0) {
                    parse_fail(path, line_no, "face indices must be positive and 1-based");
                }
                indices.push_back(idx - 1);
            }
            if (indices.size() != 3) {
                parse_fail(path, line_no, "faces must be triangles, got " +
                                              std::to_string(indices.size()) + " vertices");
            }
            mesh.faces.push_back({indices[0], indices[1], indices[2]});
        }
        // all other records (vn, vt, o, g, s, usemtl, ...) are ignored
    }
    mesh.fixed.assign(mesh.positions.size(), 0);
    mesh.validate();
    return mesh;
}

TriMesh load_mesh_ply(const std::string& path) {
    std::ifstream in = open_input(path);
    const PlyHeader header = read_ply_header(path, in);
    int line_no = header.header_lines;
    TriMesh mesh;
    bool vertex_seen = false, face_seen = false;

    for (const PlyElement& el : header.elements) {
        std::string line;
        if (el.name == "vertex") {
            vertex_seen = true;
            if (el.has_list) parse_fail(path, line_no, "list property on vertex element");
            auto idx_of = [&](const char* name) {
                const auto it = std::find(el.properties.begin(), el.properties.end(), name);
                if (it == el.properties.end()) {
                    parse_fail(path, line_no, std::string("vertex element lacks property ") + name);
                }
                return static_cast<std::size_t>(it - el.properties.begin());
            };
            const std::size_t ix = idx_of("x"), iy = idx_of("y"), iz = idx_of("z");
            for (long v = 0; v < el.count; ++v) {
                if (!std::getline(in, line)) parse_fail(path, line_no, "unexpected end of file");
                ++line_no;
                std::istringstream ss(line);
                std::vector<double> vals(el.properties.size());
                for (double& val : vals) {
                    if (!(ss >> val)) parse_fail(path, line_no, "short vertex row");
                }
                const Vec3 p{vals[ix], vals[iy], vals[iz]};
                if (!is_finite(p)) parse_fail(path, line_no, "non-finite coordinate");
                mesh.positions.push_back(p);
            }
        } else if (el.name == "face") {
            face_seen = true;
            if (!el.has_list ||
                (el.list_name != "vertex_indices" && el.list_name != "vertex_index")) {
                parse_fail(path, line_no, "face element needs a vertex_indices list property");
            }
            for (long f = 0; f < el.count; ++f) {
                if (!std::getline(in, line)) parse_fail(path, line_no, "unexpected end of file");
                ++line_no;
                std::istringstream ss(line);
                long n = 0;
                if (!(ss >> n)) parse_fail(path, line_no, "malformed face row");
                if (n != 3) {
                    parse_fail(path, line_no,
                               "faces must be triangles, got " + std::to_string(n) + " vertices");
                }
                int a, b, c;
                if (!(ss >> a >> b >> c)) parse_fail(path, line_no, "short face row");
                mesh.faces.push_back({a, b, c});
            }
        } else {
            for (long v = 0; v < el.count; ++v) {
                if (!std::getline(in, line)) parse_fail(path, line_no, "unexpected end of file");
                ++line_no;
            }
        }
    }
    if (!vertex_seen || !face_seen) {
        throw ParseError("'" + path + "' lacks vertex or face elements");
    }
    mesh.fixed.assign(mesh.positions.size(), 0);
    mesh.validate();
    return mesh;
}

}  // namespace

PointFormat point_format_from_path(const std::string& path) {
    const std::string ext = lower_extension(path);
    if (ext == "xyz") return PointFormat::xyz;
    if (ext == "ply") return PointFormat::ply;
    throw ConfigError("cannot infer point format from '" + path + "' (use .xyz or .ply)");
}

MeshFormat mesh_format_from_path(const std::string& path) {
    const std::string ext = lower_extension(path);
    if (ext == "obj") return MeshFormat::obj;
    if (ext == "ply") return MeshFormat::ply;
    throw ConfigError("cannot infer mesh format from '" + path + "' (use .obj or .ply)");
}

std::vector<Vec3> load_points(const std::string& path) {
    return load_points(path, point_format_from_path(path));
}

std::vector<Vec3> load_points(const std::string& path, PointFormat format) {
    return format == PointFormat::xyz ? load_points_xyz(path) : load_points_ply(path);
}

void write_points(const std::vector<Vec3>& points, const std::string& path) {
    write_points(points, path, point_format_from_path(path));
}

void write_points(const std::vector<Vec3>& points, const std::string& path, PointFormat format) {
    std::ofstream out = open_output(path);
    if (format == PointFormat::xyz) {
        for (const Vec3& p : points) {
            out << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.z)
                << '\n';
        }
    } else {
        out << "ply\nformat ascii 1.0\nelement vertex " << points.size()
            << "\nproperty double x\nproperty double y\nproperty double z\nend_header\n";
        for (const Vec3& p : points) {
            out << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.z)
                << '\n';
        }
    }
    finish_output(out, path);
}

TriMesh load_mesh(const std::string& path) {
    return load_mesh(path, mesh_format_from_path(path));
}

TriMesh load_mesh(const std::string& path, MeshFormat format) {
    return format == MeshFormat::obj ? load_mesh_obj(path) : load_mesh_ply(path);
}

void write_mesh(const TriMesh& mesh, const std::string& path) {
    write_mesh(mesh, path, mesh_format_from_path(path));
}

void write_mesh(const TriMesh& mesh, const std::string& path, MeshFormat format) {
    mesh.validate();
    std::ofstream out = open_output(path);
    if (format == MeshFormat::obj) {
        for (const Vec3& p : mesh.positions) {
            out << "v " << format_double(p.x) << ' ' << format_double(p.y) << ' '
                << format_double(p.z) << '\n';
        }
        for (const auto& f : mesh.faces) {
            out << "f " << (f[0] + 1) << ' ' << (f[1] + 1) << ' ' << (f[2] + 1) << '\n';
        }
    } else {
        out << "ply\nformat ascii 1.0\nelement vertex " << mesh.vertex_count()
            << "\nproperty double x\nproperty double y\nproperty double z\nelement face "
            << mesh.face_count() << "\nproperty list uchar int vertex_indices\nend_header\n";
        for (const Vec3& p : mesh.positions) {
            out << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.z)
                << '\n';
        }
        for (const auto& f : mesh.faces) {
            out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
        }
    }
    finish_output(out, path);
}

void write_diagnostics(const std::vector<IterationStats>& history, const std::string& path) {
    std::ofstream out = open_output(path);
    out << kDiagnosticsHeader << '\n';
    for (const IterationStats& s : history) {
        out << s.iteration << ',' << format_double(s.max_displacement) << ','
            << format_double(s.mean_nn_distance) << ',' << format_double(s.spring_energy) << ','
            << format_double(s.kinetic_energy) << ',' << s.snapped_count << ','
            << s.degenerate_face_count << '\n';
    }
    finish_output(out, path);
}

}  // namespace foil
