#pragma once

// Dataset CSV: header `id,system_id,domain_tag,y,true_noise_var,f0,...,f{d-1}`.
// An absent true_noise_var is an empty field.

#include <string>

#include "hetmos/datagen.hpp"

namespace hetmos {

std::string dataset_to_csv(const Dataset& data);
Dataset dataset_from_csv(const std::string& text, const std::string& source = "<memory>");

void write_dataset_csv(const std::string& path, const Dataset& data);
Dataset read_dataset_csv(const std::string& path);

}  // namespace hetmos
