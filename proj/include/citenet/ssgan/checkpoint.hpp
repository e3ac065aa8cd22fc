#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "citenet/ssgan/model.hpp"

namespace citenet::ssgan {

/// Binary "CGAN" model file; layout documented in docs/checkpoint_format.md.
/// The generator is written only when `include_generator` is set and the
/// model still has one.
std::vector<unsigned char> encode_checkpoint(const GanModel& model, bool include_generator = false);
GanModel decode_checkpoint(std::span<const unsigned char> bytes);

void save_checkpoint(const GanModel& model, const std::filesystem::path& path, bool include_generator = false);
GanModel load_checkpoint(const std::filesystem::path& path);

}  // namespace citenet::ssgan
