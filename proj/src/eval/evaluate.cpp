#include "emojirec/eval/evaluate.hpp"

#include "emojirec/error.hpp"

namespace emojirec::eval {

std::vector<Prediction> predict_split(const train::TrainedModel& model,
                                      std::span<const LabeledDialogue> split) {
  std::vector<Prediction> preds;
  preds.reserve(split.size());
  for (const auto& d : split) preds.push_back(Prediction{model.predict(d.sentences), d.label});
  return preds;
}

EvalReport evaluate(const train::TrainedModel& model, std::span<const LabeledDialogue> split) {
  require(!split.empty(), ErrorKind::data, "evaluate: empty split");
  const auto preds = predict_split(model, split);
  return build_report(preds, model.config.n_e);
}

}  // namespace emojirec::eval
