#include "sonarsim/scene_io.hpp"

#include "sonarsim/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace sonarsim {

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& message) {
    std::ostringstream oss;
    oss << "scene: line " << (node.Mark().line + 1) << ": " << message;
    throw ValidationError(oss.str());
}

double number_field(const YAML::Node& parent, const char* key, double fallback,
                    bool required = false) {
    const YAML::Node node = parent[key];
    if (!node) {
        if (required) fail(parent, std::string("missing field '") + key + "'");
        return fallback;
    }
    try {
        return node.as<double>();
    } catch (const YAML::Exception&) {
        fail(node, std::string("field '") + key + "' is not a number");
    }
}

Eigen::Vector3d vec3_field(const YAML::Node& parent, const char* key,
                           const Eigen::Vector3d& fallback) {
    const YAML::Node node = parent[key];
    if (!node) return fallback;
    // Planes are two-dimensional; a trailing entry may be omitted.
    if (!node.IsSequence() || node.size() < 2 || node.size() > 3) {
        fail(node, std::string("field '") + key + "' must be a list of 2 or 3 numbers");
    }
    return {node[0].as<double>(), node[1].as<double>(),
            node.size() == 3 ? node[2].as<double>() : fallback.z()};
}

Eigen::Isometry3d pose_of(const YAML::Node& obj) {
    const Eigen::Vector3d position = vec3_field(obj, "position", Eigen::Vector3d::Zero());
    const Eigen::Vector3d rpy_deg = vec3_field(obj, "rotation_deg", Eigen::Vector3d::Zero());
    const Eigen::Vector3d rpy = rpy_deg * (M_PI / 180.0);
    Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
    pose.translate(position);
    pose.rotate(Eigen::AngleAxisd(rpy.z(), Eigen::Vector3d::UnitZ()) *
                Eigen::AngleAxisd(rpy.y(), Eigen::Vector3d::UnitY()) *
                Eigen::AngleAxisd(rpy.x(), Eigen::Vector3d::UnitX()));
    return pose;
}

Material parse_material(const YAML::Node& node, std::size_t index) {
    Material m;
    m.reflectivity = number_field(node, "reflectivity", 1.0);
    m.roughness = number_field(node, "roughness", 0.0);
    if (m.reflectivity < 0.0 || m.reflectivity > 1.0) {
        std::ostringstream oss;
        oss << "field 'reflectivity' of material " << index << " is "
            << m.reflectivity << ", must be in [0, 1]";
        fail(node, oss.str());
    }
    if (m.roughness < 0.0) {
        fail(node, "field 'roughness' must be >= 0");
    }
    return m;
}

}  // namespace

Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open scene file: " + path);
    }
    YAML::Node root;
    try {
        root = YAML::Load(in);
    } catch (const YAML::ParserException& e) {
        throw ValidationError("scene: " + path + ": " + e.what());
    }

    Scene scene;
    const std::filesystem::path base = std::filesystem::path(path).parent_path();

    for (std::size_t i = 0; i < root["materials"].size(); ++i) {
        scene.materials.push_back(parse_material(root["materials"][i], i));
    }
    if (scene.materials.empty()) {
        scene.materials.push_back(Material{});
    }

    const YAML::Node objects = root["objects"];
    if (!objects || !objects.IsSequence()) {
        throw ValidationError("scene: " + path + ": missing 'objects' list");
    }
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const YAML::Node obj = objects[i];
        TriMesh mesh;
        std::string name;
        if (obj["primitive"]) {
            const std::string kind_str = obj["primitive"].as<std::string>();
            PrimitiveKind kind;
            try {
                kind = primitive_kind_from_string(kind_str);
            } catch (const ValidationError& e) {
                fail(obj["primitive"], e.what());
            }
            PrimitiveParams params;
            params.size = vec3_field(obj, "size", params.size);
            params.radius = number_field(obj, "radius", params.radius);
            params.height = number_field(obj, "height", params.height);
            const int resolution =
                static_cast<int>(number_field(obj, "resolution", 16.0));
            try {
                mesh = tessellate_primitive(kind, params, resolution);
            } catch (const ValidationError& e) {
                fail(obj, e.what());
            }
            name = kind_str;
        } else if (obj["mesh_file"]) {
            const std::string rel = obj["mesh_file"].as<std::string>();
            const std::string mesh_path = (base / rel).string();
            mesh = load_trimesh_text(mesh_path);
            name = rel;
        } else {
            fail(obj, "object needs either 'primitive' or 'mesh_file'");
        }

        const int material_id = static_cast<int>(number_field(obj, "material", 0.0));
        if (material_id < 0 || material_id >= static_cast<int>(scene.materials.size())) {
            std::ostringstream oss;
            oss << "field 'material' of object " << i << " is " << material_id
                << ", but the scene declares " << scene.materials.size() << " materials";
            fail(obj, oss.str());
        }
        mesh.material_id = material_id;
        scene.add_object(transform_mesh(mesh, pose_of(obj)), std::move(name));
    }
    return scene;
}

TriMesh load_trimesh_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open mesh file: " + path);
    }
    std::vector<Eigen::Vector3d> vertices;
    TriMesh mesh;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        auto bad = [&](const char* msg) {
            std::ostringstream oss;
            oss << "mesh " << path << ": line " << line_no << ": " << msg;
            throw ValidationError(oss.str());
        };
        if (tag == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z)) bad("expected 'v x y z'");
            if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
                bad("vertex coordinates must be finite");
            }
            vertices.emplace_back(x, y, z);
        } else if (tag == "t") {
            long a, b, c;
            if (!(ls >> a >> b >> c)) bad("expected 't i j k'");
            const long n = static_cast<long>(vertices.size());
            if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n) {
                bad("triangle index out of range");
            }
            mesh.triangles.emplace_back(vertices[a], vertices[b], vertices[c]);
        } else {
            bad("unknown line tag (expected 'v' or 't')");
        }
    }
    if (mesh.triangles.empty()) {
        throw ValidationError("mesh " + path + ": no triangles");
    }
    return mesh;
}

}  // namespace sonarsim
