#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "ssp/grid.hpp"
#include "ssp/schedule.hpp"

namespace ssp {

// Fixed-length condition vector with named style and content slots. The null
// condition stands for the empty prompt; its slots are zero by invariant.
struct ConditionEmbedding {
    std::vector<double> style_slot;
    std::vector<double> content_slot;
    bool null_flag = false;

    static ConditionEmbedding null_condition() {
        ConditionEmbedding e;
        e.null_flag = true;
        return e;
    }
};

// The noise-prediction contract. predict_eps must be deterministic in
// (z, step index, condition) and preserve the latent shape; implementations
// are immutable after construction and callable from any thread.
class ScoreModel {
  public:
    virtual ~ScoreModel() = default;
    virtual GridShape data_shape() const = 0;
    virtual Grid predict_eps(const Grid& z, int step_index,
                             const ConditionEmbedding& cond) const = 0;
    const NoiseSchedule& schedule() const { return *schedule_; }

  protected:
    explicit ScoreModel(std::shared_ptr<const NoiseSchedule> sched);
    double abar_at(int step_index) const;
    void check_latent(const Grid& z) const;

    std::shared_ptr<const NoiseSchedule> schedule_;
};

struct GaussianComponent {
    Grid mean;
    double scale = 1.0;   // isotropic standard deviation, > 0
    double weight = 1.0;  // > 0; normalized to sum 1 at model construction
};

// Single isotropic Gaussian data distribution N(mean, scale^2 I). The marginal
// at step t is N(sqrt(abar) mean, (abar scale^2 + 1 - abar) I), whose score is
// available in closed form. Conditions are ignored.
class IsotropicGaussianModel : public ScoreModel {
  public:
    IsotropicGaussianModel(Grid mean, double scale, std::shared_ptr<const NoiseSchedule> sched);
    GridShape data_shape() const override { return mean_.shape(); }
    Grid predict_eps(const Grid& z, int step_index, const ConditionEmbedding& cond) const override;

  private:
    Grid mean_;
    double scale_;
};

// Mixture of isotropic Gaussians; the prediction is the responsibility-weighted
// combination of the component predictions under the component marginals.
// Conditions are ignored.
class GaussianMixtureModel : public ScoreModel {
  public:
    GaussianMixtureModel(std::vector<GaussianComponent> components,
                         std::shared_ptr<const NoiseSchedule> sched);
    GridShape data_shape() const override;
    Grid predict_eps(const Grid& z, int step_index, const ConditionEmbedding& cond) const override;

    const std::vector<GaussianComponent>& components() const { return components_; }
    // Posterior responsibilities of each component at (z, step); sums to 1.
    std::vector<double> responsibilities(const Grid& z, int step_index) const;

  private:
    std::vector<GaussianComponent> components_;
};

// Registry of labeled mixtures selected by condition embedding. A null
// condition pools every label's components with uniform label weights; other
// embeddings pick the nearest registered embedding (L2 over both slots,
// ties broken toward the lower label index).
class ConditionalMixtureModel : public ScoreModel {
  public:
    struct LabeledMixture {
        std::string label;
        ConditionEmbedding embedding;
        std::vector<GaussianComponent> components;
    };

    ConditionalMixtureModel(std::vector<LabeledMixture> entries,
                            std::shared_ptr<const NoiseSchedule> sched);
    GridShape data_shape() const override;
    Grid predict_eps(const Grid& z, int step_index, const ConditionEmbedding& cond) const override;

    int label_count() const { return static_cast<int>(models_.size()); }
    const std::string& label_name(int index) const { return names_[index]; }
    const ConditionEmbedding& label_embedding(int index) const { return embeddings_[index]; }
    const GaussianMixtureModel& label_mixture(int index) const { return *models_[index]; }
    int find_label(const std::string& name) const;  // -1 when absent

    // Nearest-neighbor resolution used by predict_eps; exposed for tests and
    // the pipeline's manifest.
    int match_label(const ConditionEmbedding& cond) const;

    int style_dim() const { return style_dim_; }
    int content_dim() const { return content_dim_; }

  private:
    std::vector<std::string> names_;
    std::vector<ConditionEmbedding> embeddings_;
    std::vector<std::unique_ptr<GaussianMixtureModel>> models_;
    std::unique_ptr<GaussianMixtureModel> pooled_;
    int style_dim_ = 0;
    int content_dim_ = 0;
};

// Style descriptor: per-channel mean, per-channel standard deviation, and an
// 8-bin radial spectral energy profile summed across channels. Length 2C + 8.
std::vector<double> extract_style(const Grid& img);

// Content descriptor: gradient-magnitude map (central differences, replicated
// borders, averaged over channels) pooled to 8x8 and flattened. Length 64.
// Requires height and width >= 8. Not translation invariant by construction.
std::vector<double> extract_content(const Grid& img);

// Loads a ConditionalMixtureModel from the JSON model document: a shape plus
// labeled component lists (means as nested arrays or a scalar fill, scales,
// weights) and optional per-label embeddings. Labels without explicit slots
// get embeddings extracted from their first component mean.
std::shared_ptr<ConditionalMixtureModel> load_model_json(
    std::istream& in, std::shared_ptr<const NoiseSchedule> sched);
std::shared_ptr<ConditionalMixtureModel> load_model_file(
    const std::string& path, std::shared_ptr<const NoiseSchedule> sched);

}  // namespace ssp
