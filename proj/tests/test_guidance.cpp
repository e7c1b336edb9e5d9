#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

#include "ssp/guidance.hpp"

using namespace ssp;
using namespace ssp::testing;

namespace {

// Minimal model that counts branch queries and returns a condition-dependent
// constant so combinator wiring is observable.
class CountingModel : public ScoreModel {
  public:
    explicit CountingModel(std::shared_ptr<const NoiseSchedule> sched)
        : ScoreModel(std::move(sched)) {}
    GridShape data_shape() const override { return {2, 2, 1}; }
    Grid predict_eps(const Grid& z, int, const ConditionEmbedding& cond) const override {
        ++calls;
        double v = 0.0;
        if (!cond.null_flag) {
            v = cond.style_slot.empty() ? 0.5 : cond.style_slot[0];
        }
        Grid out = z;
        for (double& x : out.data) x = v;
        return out;
    }
    mutable int calls = 0;
};

ConditionEmbedding embed(double v) {
    ConditionEmbedding e;
    e.style_slot = {v};
    e.null_flag = false;
    return e;
}

}  // namespace

TEST_CASE("cfg_combine endpoints are exact and the interior is affine") {
    const Grid u = random_grid(4, 4, 1, 71), c = random_grid(4, 4, 1, 72);
    CHECK(cfg_combine(u, c, 0.0).data == u.data);
    CHECK(cfg_combine(u, c, 1.0).data == c.data);
    const Grid g5 = cfg_combine(u, c, 5.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        CHECK(g5.data[i] == doctest::Approx(u.data[i] + 5.0 * (c.data[i] - u.data[i])).epsilon(1e-15));
    }
    // cfg_combine(x, y, w) - y == (1 - w)(x - y)
    const double w = 0.3;
    const Grid g = cfg_combine(u, c, w);
    for (std::size_t i = 0; i < u.size(); ++i) {
        CHECK(g.data[i] - c.data[i] ==
              doctest::Approx((1.0 - w) * (u.data[i] - c.data[i])).epsilon(1e-12));
    }
    CHECK_THROWS_AS(cfg_combine(u, random_grid(4, 5, 1, 73), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cfg_combine(u, c, -0.5), std::invalid_argument);
}

TEST_CASE("negative_combine degeneracies") {
    const Grid n = random_grid(4, 4, 1, 74), p = random_grid(4, 4, 1, 75);
    CHECK(negative_combine(n, p, 1.0).data == p.data);
    for (double w : {0.0, 0.7, 1.5, 3.0}) {
        CHECK(negative_combine(n, n, w).data == n.data);
    }
    const Grid g = negative_combine(n, p, 1.5);
    for (std::size_t i = 0; i < n.size(); ++i) {
        CHECK(g.data[i] ==
              doctest::Approx(n.data[i] + 1.5 * (p.data[i] - n.data[i])).epsilon(1e-15));
    }
}

TEST_CASE("dual_scale_combine reduces to the simpler combinators") {
    const Grid b = random_grid(4, 4, 1, 76), p = random_grid(4, 4, 1, 77),
               n = random_grid(4, 4, 1, 78);
    CHECK(dual_scale_combine(b, p, n, 0.0, 0.0).data == b.data);

    const Grid viacfg = dual_scale_combine(b, p, n, 2.5, 0.0);
    const Grid cfg = cfg_combine(b, p, 2.5);
    for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(std::fabs(viacfg.data[i] - cfg.data[i]) < 1e-12);
    }

    const Grid vianeg = dual_scale_combine(n, p, n, 1.5, 0.8);
    const Grid neg = negative_combine(n, p, 1.5);
    for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(std::fabs(vianeg.data[i] - neg.data[i]) < 1e-12);
    }

    const Grid full = dual_scale_combine(b, p, n, 1.2, 0.4);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double want =
            b.data[i] + 1.2 * (p.data[i] - b.data[i]) - 0.4 * (n.data[i] - b.data[i]);
        CHECK(full.data[i] == doctest::Approx(want).epsilon(1e-15));
    }
}

TEST_CASE("build_negative_embedding stores slots verbatim") {
    const std::vector<double> sv = {1.0, -2.0, 0.25};
    const std::vector<double> cv = {0.5, 0.0};
    const ConditionEmbedding e = build_negative_embedding(sv, cv);
    CHECK(e.style_slot == sv);
    CHECK(e.content_slot == cv);
    CHECK_FALSE(e.null_flag);

    const ConditionEmbedding zero = build_negative_embedding({0.0}, {0.0});
    CHECK_FALSE(zero.null_flag);  // value-equal to null but a distinct identity
    CHECK(zero.style_slot == std::vector<double>{0.0});

    CHECK_THROWS_AS(build_negative_embedding({std::nan("")}, {0.0}), std::invalid_argument);
}

TEST_CASE("guided_eps queries one model branch per mode requirement") {
    auto sched = std::make_shared<const NoiseSchedule>(build_schedule(100, 10, 1e-3, 1e-2));
    CountingModel model(sched);
    const Grid z(2, 2, 1, 0.0);

    GuidanceConfig g;
    g.mode = GuidanceMode::none;
    g.positive = embed(2.0);
    CHECK(guided_eps(model, z, 0, g).data[0] == 2.0);
    CHECK(model.calls == 1);

    model.calls = 0;
    g.mode = GuidanceMode::cfg;
    g.omega = 3.0;
    CHECK(guided_eps(model, z, 0, g).data[0] == doctest::Approx(0.0 + 3.0 * (2.0 - 0.0)));
    CHECK(model.calls == 2);

    model.calls = 0;
    g.mode = GuidanceMode::negative;
    g.omega_i = 1.5;
    g.negative = embed(-1.0);
    CHECK(guided_eps(model, z, 0, g).data[0] == doctest::Approx(-1.0 + 1.5 * (2.0 - -1.0)));
    CHECK(model.calls == 2);

    model.calls = 0;
    g.mode = GuidanceMode::dual;
    g.omega_plus = 1.0;
    g.omega_minus = 0.5;
    CHECK(guided_eps(model, z, 0, g).data[0] ==
          doctest::Approx(0.0 + 1.0 * (2.0 - 0.0) - 0.5 * (-1.0 - 0.0)));
    CHECK(model.calls == 3);
}

TEST_CASE("mode none equals cfg at omega one") {
    auto sched = std::make_shared<const NoiseSchedule>(build_schedule(100, 10, 1e-3, 1e-2));
    CountingModel model(sched);
    const Grid z(2, 2, 1, 0.0);
    GuidanceConfig none;
    none.mode = GuidanceMode::none;
    none.positive = embed(0.75);
    GuidanceConfig cfg1;
    cfg1.mode = GuidanceMode::cfg;
    cfg1.omega = 1.0;
    cfg1.positive = embed(0.75);
    CHECK(guided_eps(model, z, 0, none).data == guided_eps(model, z, 0, cfg1).data);
}
