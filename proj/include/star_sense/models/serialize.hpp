#pragma once

#include <memory>
#include <string>

#include "star_sense/models/model.hpp"

namespace starsense::models {

// Versioned JSON persistence. Doubles are written in shortest round-trip
// form, so a reloaded model predicts bit-identically.
std::string model_to_string(const TrainedModel& model);
std::unique_ptr<TrainedModel> model_from_string(const std::string& text);

void save_model(const TrainedModel& model, const std::string& path);
std::unique_ptr<TrainedModel> load_model(const std::string& path);

}  // namespace starsense::models
