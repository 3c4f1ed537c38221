#include "support/recording.hpp"

namespace beepsim::testsupport {

namespace {

class RecordingProgram final : public NodeProgram {
 public:
  RecordingProgram(std::unique_ptr<NodeProgram> inner,
                   std::shared_ptr<RunLog> log, std::size_t node)
      : inner_(std::move(inner)), log_(std::move(log)), node_(node) {}

  Action act(std::uint64_t phase, std::uint32_t slot) override {
    last_action_ = inner_->act(phase, slot);
    return last_action_;
  }

  void absorb(Observation obs) override {
    log_->nodes[node_].push_back({last_action_, obs});
    inner_->absorb(obs);
  }

  std::optional<std::int64_t> decision() const override {
    return inner_->decision();
  }
  bool wants_termination_participation() const override {
    return inner_->wants_termination_participation();
  }
  std::optional<double> contention_probability() const override {
    return inner_->contention_probability();
  }

 private:
  std::unique_ptr<NodeProgram> inner_;
  std::shared_ptr<RunLog> log_;
  std::size_t node_;
  Action last_action_ = Action::Listen;
};

}  // namespace

ProgramFactory recording(ProgramFactory inner, std::shared_ptr<RunLog> log) {
  return [inner = std::move(inner), log = std::move(log)](
             std::size_t node, RngStream rng) -> std::unique_ptr<NodeProgram> {
    if (log->nodes.size() <= node) log->nodes.resize(node + 1);
    log->nodes[node].clear();
    return std::make_unique<RecordingProgram>(inner(node, rng), log, node);
  };
}

}  // namespace beepsim::testsupport
