#pragma once

#include "sonarsim/scene.hpp"

#include <string>

namespace sonarsim {

/// Loads a scene description file (YAML, grammar in docs/file_formats.md).
/// Primitive poses are baked into the vertices at load time. Throws IoError
/// if the file cannot be read and ValidationError with line/field context on
/// malformed content.
Scene load_scene(const std::string& path);

/// Parses the minimal triangle-list text format: lines "v x y z" declare
/// vertices, lines "t i j k" declare triangles by zero-based vertex index.
TriMesh load_trimesh_text(const std::string& path);

}  // namespace sonarsim
