#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "duet/errors.hpp"
#include "duet/toy_backbone.hpp"

using namespace duet;

namespace {

Tensor3 random_feature(int c, int h, int w, std::uint32_t seed) {
    Tensor3 t(c, h, w);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (auto& v : t.data) v = dist(rng);
    return t;
}

// Reference stage: direct six-loop convolution, stride 2, zero pad 1,
// rectified. No reuse of the library's loop structure.
Tensor3 naive_stage(const ConvLayer& layer, const Tensor3& x) {
    const int out_h = (x.height + 1) / 2;
    const int out_w = (x.width + 1) / 2;
    Tensor3 y(layer.out_channels, out_h, out_w);
    for (int o = 0; o < layer.out_channels; ++o)
        for (int oy = 0; oy < out_h; ++oy)
            for (int ox = 0; ox < out_w; ++ox) {
                double acc = 0.0;
                for (int i = 0; i < layer.in_channels; ++i)
                    for (int ky = 0; ky < 3; ++ky)
                        for (int kx = 0; kx < 3; ++kx) {
                            const int sy = 2 * oy + ky - 1;
                            const int sx = 2 * ox + kx - 1;
                            if (sy < 0 || sy >= x.height || sx < 0 || sx >= x.width) continue;
                            acc += layer.w(o, i, ky, kx) * x.at(i, sy, sx);
                        }
                y.at(o, oy, ox) = std::max(0.0, acc);
            }
    return y;
}

Backbone small_net(std::uint64_t seed) {
    BackboneConfig cfg;
    cfg.input_channels = 5;
    cfg.stage_widths = {4, 6, 8, 10};
    cfg.seed = seed;
    return init_backbone(cfg);
}

} // namespace

TEST_CASE("stage_forward matches the naive convolution") {
    Backbone net = small_net(404);
    Tensor3 x = random_feature(5, 12, 10, 1);
    for (int s = 0; s < kStages; ++s) {
        Tensor3 got = stage_forward(net, s, x);
        Tensor3 want = naive_stage(net.layers[s], x);
        REQUIRE(got.channels == want.channels);
        REQUIRE(got.height == want.height);
        REQUIRE(got.width == want.width);
        for (std::size_t i = 0; i < want.data.size(); ++i)
            CHECK(got.data[i] == doctest::Approx(want.data[i]).epsilon(1e-12).scale(1.0));
        x = got;
    }
}

TEST_CASE("stage_forward handles odd extents") {
    Backbone net = small_net(405);
    Tensor3 x = random_feature(5, 9, 7, 2);
    Tensor3 got = stage_forward(net, 0, x);
    Tensor3 want = naive_stage(net.layers[0], x);
    REQUIRE(got.height == 5);
    REQUIRE(got.width == 4);
    for (std::size_t i = 0; i < want.data.size(); ++i)
        CHECK(got.data[i] == doctest::Approx(want.data[i]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("spatial sizes halve (rounding up) through the standard chain") {
    BackboneConfig cfg = client_backbone_config(10, 7);
    Backbone net = init_backbone(cfg);
    Tensor3 x = random_feature(30, 112, 112, 3);
    const int expect[kStages] = {56, 28, 14, 7};
    for (int s = 0; s < kStages; ++s) {
        x = stage_forward(net, s, x);
        CHECK(x.height == expect[s]);
        CHECK(x.width == expect[s]);
        CHECK(x.channels == cfg.stage_widths[s]);
        CHECK(std::all_of(x.data.begin(), x.data.end(), [](double v) { return v >= 0.0; }));
    }
}

TEST_CASE("weight initialization is deterministic and follows the documented stream") {
    Backbone a = small_net(99);
    Backbone b = small_net(99);
    for (int s = 0; s < kStages; ++s) CHECK(a.layers[s].weights == b.layers[s].weights);

    Backbone c = small_net(100);
    CHECK(a.layers[0].weights != c.layers[0].weights);

    // First weight of stage 0 equals the documented draw: u = (x >> 11) *
    // 2^-53 from mt19937_64, scaled to [-s, s] with s = sqrt(1/(9 fan_in)).
    std::mt19937_64 rng(99);
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double scale = std::sqrt(1.0 / (9.0 * 5));
    CHECK(a.layers[0].weights[0] == doctest::Approx((2.0 * u - 1.0) * scale).epsilon(1e-15));

    for (int s = 0; s < kStages; ++s) {
        const double bound = std::sqrt(1.0 / (9.0 * a.layers[s].in_channels));
        for (double w : a.layers[s].weights) {
            CHECK(w <= bound);
            CHECK(w >= -bound);
        }
    }
}

TEST_CASE("embedding is the normalized channel means") {
    Backbone net = small_net(7);
    Tensor3 f(10, 2, 2);
    for (int c = 0; c < 10; ++c)
        for (int i = 0; i < 4; ++i) f.data[c * 4 + i] = c + 0.25 * i;
    // Channel mean is c + 0.375.
    Embedding e = embed(net, f);
    REQUIRE(e.values.size() == 10);
    CHECK(e.normalized);
    double norm_sq = 0.0;
    for (double v : e.values) norm_sq += v * v;
    CHECK(norm_sq == doctest::Approx(1.0).epsilon(1e-12));
    double raw_norm = 0.0;
    for (int c = 0; c < 10; ++c) raw_norm += (c + 0.375) * (c + 0.375);
    raw_norm = std::sqrt(raw_norm);
    for (int c = 0; c < 10; ++c)
        CHECK(e.values[c] == doctest::Approx((c + 0.375) / raw_norm).epsilon(1e-12));
}

TEST_CASE("zero features produce an unnormalized zero embedding") {
    Backbone net = small_net(8);
    Tensor3 f(10, 3, 3);
    Embedding e = embed(net, f);
    CHECK_FALSE(e.normalized);
    CHECK(std::all_of(e.values.begin(), e.values.end(), [](double v) { return v == 0.0; }));
    CHECK(cosine_similarity(e, e) == 0.0);
}

TEST_CASE("embed rejects a feature with the wrong channel count") {
    Backbone net = small_net(9);
    Tensor3 f(7, 2, 2);
    CHECK_THROWS_AS(embed(net, f), ShapeError);
}

TEST_CASE("stage_forward rejects mismatched input channels") {
    Backbone net = small_net(10);
    Tensor3 f(4, 8, 8);
    CHECK_THROWS_AS(stage_forward(net, 0, f), ShapeError);
}

TEST_CASE("cosine similarity") {
    Embedding a{{1.0, 0.0}, true};
    Embedding b{{0.0, 1.0}, true};
    Embedding c{{0.6, 0.8}, true};
    CHECK(cosine_similarity(a, a) == doctest::Approx(1.0));
    CHECK(cosine_similarity(a, b) == doctest::Approx(0.0));
    CHECK(cosine_similarity(a, c) == doctest::Approx(0.6));
}

TEST_CASE("client and server configurations bracket the split") {
    BackboneConfig client = client_backbone_config(10, 42);
    CHECK(client.input_channels == 30);
    CHECK(client.stage_widths == std::array<int, 4>{16, 32, 64, 128});
    CHECK(client.seed == 42);

    BackboneConfig server = server_backbone_config(10, 42);
    CHECK(server.input_channels == 162);
    CHECK(server.stage_widths == std::array<int, 4>{32, 64, 128, 256});
    CHECK(server.seed == 42);
}
