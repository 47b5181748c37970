#pragma once

#include <span>
#include <vector>

#include "emojirec/dialogue.hpp"
#include "emojirec/eval/metrics.hpp"
#include "emojirec/training/config.hpp"

namespace emojirec::eval {

std::vector<Prediction> predict_split(const train::TrainedModel& model,
                                      std::span<const LabeledDialogue> split);

// Eval-mode inference over the split followed by build_report.
EvalReport evaluate(const train::TrainedModel& model, std::span<const LabeledDialogue> split);

}  // namespace emojirec::eval
