#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "cfaloha/detection.hpp"
#include "test_support.hpp"

using namespace cfaloha;
using namespace cfaloha::testing;
using cd = std::complex<double>;

namespace {

ChannelRealization hand_channel(int num_aps, int antennas_per_ap, const Eigen::MatrixXcd& g) {
  ChannelRealization ch;
  ch.num_aps = num_aps;
  ch.antennas_per_ap = antennas_per_ap;
  ch.g = g;
  ch.beta = Eigen::MatrixXd::Ones(g.cols(), num_aps);
  return ch;
}

ReceiverConfig unit_receiver(int num_users, double noise = 1.0, double power = 1.0) {
  ReceiverConfig rx;
  rx.noise_power = noise;
  rx.tx_powers.assign(static_cast<std::size_t>(num_users), power);
  rx.capture_threshold = 2.0;
  return rx;
}

}  // namespace

TEST_CASE("mmse_sinr closed forms") {
  SUBCASE("single active user is noise limited") {
    Rng rng(3);
    auto inst = random_instance(rng, 4, 2, 5, 1);
    const int k = inst.activity.active[0];
    const auto full = full_clusters(4, 5, 2);
    const double expected =
        inst.receiver.tx_powers[k] * inst.channels.g.col(k).squaredNorm() / inst.receiver.noise_power;
    CHECK(relative_error(mmse_sinr(inst.channels, inst.activity, full, inst.receiver, k), expected) < 1e-12);
  }

  SUBCASE("scalar channel with one interferer") {
    Eigen::MatrixXcd g(1, 2);
    g << cd(1.2, -0.7), cd(0.4, 0.9);
    const auto ch = hand_channel(1, 1, g);
    ReceiverConfig rx = unit_receiver(2, 0.3);
    rx.tx_powers = {2.0, 0.5};
    const SlotActivity act{{0, 1}};
    const auto full = full_clusters(1, 2, 1);
    const double expected = 2.0 * std::norm(g(0, 0)) / (0.5 * std::norm(g(0, 1)) + 0.3);
    CHECK(relative_error(mmse_sinr(ch, act, full, rx, 0), expected) < 1e-12);
  }

  SUBCASE("a mask that removes every antenna yields zero") {
    Rng rng(5);
    auto inst = random_instance(rng, 3, 2, 4, 3);
    ClusterAssignment empty = full_clusters(3, 4, 2);
    const int k = inst.activity.active[0];
    empty.subsets[k].clear();
    CHECK(mmse_sinr(inst.channels, inst.activity, empty, inst.receiver, k) == 0.0);
  }

  SUBCASE("inactive user and mismatched masks are rejected") {
    Rng rng(6);
    auto inst = random_instance(rng, 3, 2, 4, 2);
    int inactive = 0;
    while (inst.activity.is_active(inactive)) ++inactive;
    CHECK_THROWS_AS(mmse_sinr(inst.channels, inst.activity, full_clusters(3, 4, 2), inst.receiver, inactive),
                    std::invalid_argument);
    CHECK_THROWS_AS(mmse_sinr(inst.channels, inst.activity, full_clusters(2, 4, 2), inst.receiver,
                              inst.activity.active[0]),
                    std::invalid_argument);
  }
}

TEST_CASE("mmse_combiner") {
  SUBCASE("one user, unit power and noise, basis channel") {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(3, 1);
    g(0, 0) = 1.0;
    const auto ch = hand_channel(3, 1, g);
    const auto v = mmse_combiner(ch, SlotActivity{{0}}, full_clusters(3, 1, 1), unit_receiver(1), 0);
    Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(3);
    expected(0) = 0.5;
    CHECK(v.isApprox(expected, 1e-14));
  }

  SUBCASE("full mask equals a user-centric mask that keeps every AP") {
    Rng rng(9);
    auto inst = random_instance(rng, 5, 2, 12, 6);
    const auto full = full_clusters(5, 12, 2);
    const auto all = nearest_ap_clusters(inst.layout, 5);
    for (int k : inst.activity.active) {
      CHECK(mmse_combiner(inst.channels, inst.activity, full, inst.receiver, k)
                .isApprox(mmse_combiner(inst.channels, inst.activity, all, inst.receiver, k), 1e-12));
    }
  }

  SUBCASE("support stays inside the mask") {
    Rng rng(10);
    auto inst = random_instance(rng, 6, 2, 10, 5);
    const auto uc = nearest_ap_clusters(inst.layout, 2);
    for (int k : inst.activity.active) {
      const auto v = mmse_combiner(inst.channels, inst.activity, uc, inst.receiver, k);
      CHECK(apply_mask(uc, k, v) == v);
    }
  }

  SUBCASE("common scaling of powers and noise keeps direction and SINR") {
    Rng rng(11);
    auto inst = random_instance(rng, 4, 3, 10, 6);
    const auto full = full_clusters(4, 10, 3);
    ReceiverConfig scaled = inst.receiver;
    const double c = 37.5;
    scaled.noise_power *= c;
    for (auto& p : scaled.tx_powers) p *= c;
    for (int k : inst.activity.active) {
      const auto v1 = mmse_combiner(inst.channels, inst.activity, full, inst.receiver, k);
      const auto v2 = mmse_combiner(inst.channels, inst.activity, full, scaled, k);
      const double cosine = std::abs(v1.dot(v2)) / (v1.norm() * v2.norm());
      CHECK(cosine == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(relative_error(sinr_from_combiner(v2, inst.channels, inst.activity, full, scaled, k),
                           sinr_from_combiner(v1, inst.channels, inst.activity, full, inst.receiver, k)) < 1e-10);
      CHECK(relative_error(mmse_sinr(inst.channels, inst.activity, full, scaled, k),
                           mmse_sinr(inst.channels, inst.activity, full, inst.receiver, k)) < 1e-10);
    }
  }
}

TEST_CASE("sinr_from_combiner") {
  Rng rng(12);
  auto inst = random_instance(rng, 4, 2, 10, 6);
  const auto uc = nearest_ap_clusters(inst.layout, 2);
  const int k = inst.activity.active[2];
  const Eigen::VectorXcd v = Eigen::VectorXcd::Random(8);

  SUBCASE("matches the literal formula") {
    CHECK(relative_error(sinr_from_combiner(v, inst.channels, inst.activity, uc, inst.receiver, k),
                         brute_force_combiner_sinr(v, inst.channels, inst.activity, uc, inst.receiver, k)) < 1e-12);
  }

  SUBCASE("is invariant to complex scaling") {
    const double base = sinr_from_combiner(v, inst.channels, inst.activity, uc, inst.receiver, k);
    for (cd c : {cd(2.0, 0.0), cd(-0.3, 4.0), cd(0.0, -1e-3)}) {
      const Eigen::VectorXcd w = c * v;
      CHECK(relative_error(sinr_from_combiner(w, inst.channels, inst.activity, uc, inst.receiver, k), base) < 1e-12);
    }
  }

  SUBCASE("rejects a combiner that vanishes under the mask") {
    Eigen::VectorXcd outside = v;
    for (int r : uc.antenna_indices(k)) outside(r) = 0.0;
    CHECK_THROWS_AS(sinr_from_combiner(outside, inst.channels, inst.activity, uc, inst.receiver, k),
                    std::invalid_argument);
  }
}

TEST_CASE("closed-form SINR agrees with combiner route and brute force") {
  Rng rng(2025);
  std::uniform_int_distribution<int> aps(1, 8);
  for (int trial = 0; trial < 150; ++trial) {
    const int l = aps(rng);
    const int n = std::max(1, 64 / l / 2);
    auto inst = random_instance(rng, l, n, 30, 1 + trial % 20);
    const auto uc = nearest_ap_clusters(inst.layout, std::min(l, 2));
    const auto full = full_clusters(l, 30, n);
    for (const auto* mask : {&full, &uc}) {
      for (int k : inst.activity.active) {
        const double closed = mmse_sinr(inst.channels, inst.activity, *mask, inst.receiver, k);
        const auto v = mmse_combiner(inst.channels, inst.activity, *mask, inst.receiver, k);
        const double via_v = sinr_from_combiner(v, inst.channels, inst.activity, *mask, inst.receiver, k);
        CHECK(relative_error(via_v, closed) < 1e-8);
        CHECK(relative_error(brute_force_mmse_sinr(inst.channels, inst.activity, *mask, inst.receiver, k),
                             closed) < 1e-7);
        const Eigen::VectorXcd mr = apply_mask(*mask, k, inst.channels.g.col(k));
        CHECK(sinr_from_combiner(mr, inst.channels, inst.activity, *mask, inst.receiver, k) <=
              closed * (1.0 + 1e-9));
      }
    }
  }
}

TEST_CASE("adding an interferer never helps") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = random_instance(rng, 4, 4, 40, 8);
    const auto uc = nearest_ap_clusters(inst.layout, 2);
    SlotActivity more = inst.activity;
    int extra = 0;
    while (more.is_active(extra)) ++extra;
    more.active.push_back(extra);
    std::sort(more.active.begin(), more.active.end());
    for (const auto& mask : {full_clusters(4, 40, 4), uc}) {
      for (int k : inst.activity.active) {
        CHECK(mmse_sinr(inst.channels, more, mask, inst.receiver, k) <=
              mmse_sinr(inst.channels, inst.activity, mask, inst.receiver, k) * (1.0 + 1e-9));
      }
    }
  }
}

TEST_CASE("cellular_sinr") {
  Rng rng(41);
  auto inst = random_instance(rng, 1, 16, 30, 10);
  const auto full = full_clusters(1, 30, 16);
  for (int k : inst.activity.active) {
    CHECK(relative_error(cellular_sinr(inst.channels, inst.activity, inst.receiver, k),
                         mmse_sinr(inst.channels, inst.activity, full, inst.receiver, k)) < 1e-12);
  }

  SUBCASE("orthogonal users do not interfere") {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(3, 2);
    g(0, 0) = cd(0.6, 0.8);
    g(1, 1) = cd(3.0, 0.0);
    const auto ch = hand_channel(1, 3, g);
    ReceiverConfig rx = unit_receiver(2, 0.5);
    rx.tx_powers = {2.0, 7.0};
    CHECK(cellular_sinr(ch, SlotActivity{{0, 1}}, rx, 0) == doctest::Approx(2.0 * 1.0 / 0.5));
    CHECK(cellular_sinr(ch, SlotActivity{{0}}, rx, 0) == doctest::Approx(4.0));
  }

  SUBCASE("needs a single site") {
    auto multi = random_instance(rng, 2, 2, 5, 2);
    CHECK_THROWS_AS(cellular_sinr(multi.channels, multi.activity, multi.receiver, multi.activity.active[0]),
                    std::invalid_argument);
  }
}

TEST_CASE("smallcell_sinr") {
  SUBCASE("single-antenna APs, two users on the same AP") {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(2, 2);
    g(0, 0) = 2.0;             // |g_1|^2 = 4 at AP 0
    g(0, 1) = cd(0.0, 1.0);    // |g_2|^2 = 1 at AP 0
    g(1, 0) = 0.1;
    g(1, 1) = 0.2;
    const auto ch = hand_channel(2, 1, g);
    const auto serving = single_ap_clusters({0, 0}, 2, 1);
    CHECK(smallcell_sinr(ch, SlotActivity{{0, 1}}, serving, unit_receiver(2), 0) == doctest::Approx(2.0));
    CHECK(smallcell_sinr(ch, SlotActivity{{0}}, serving, unit_receiver(2), 0) == doctest::Approx(4.0));
  }

  SUBCASE("strongest-AP association follows the large-scale gains") {
    Rng rng(51);
    auto inst = random_instance(rng, 6, 1, 25, 10);
    const auto a = smallcell_assignment(inst.channels, inst.activity, inst.receiver,
                                        ServingRule::kStrongestLargeScale);
    const auto nearest = nearest_ap_clusters(inst.layout, 1);
    for (int k = 0; k < 25; ++k) CHECK(a.subsets[k] == nearest.subsets[k]);
  }

  SUBCASE("never beats full cell-free, best-instantaneous never loses to strongest") {
    Rng rng(52);
    for (int trial = 0; trial < 40; ++trial) {
      auto inst = random_instance(rng, 8, 1 + trial % 3, 30, 12);
      const int n = inst.channels.antennas_per_ap;
      const auto strongest = smallcell_assignment(inst.channels, inst.activity, inst.receiver,
                                                  ServingRule::kStrongestLargeScale);
      const auto best = smallcell_assignment(inst.channels, inst.activity, inst.receiver,
                                             ServingRule::kBestInstantaneous);
      for (int k : inst.activity.active) {
        const double full = mmse_sinr(inst.channels, inst.activity, full_clusters(8, 30, n), inst.receiver, k);
        const double s1 = smallcell_sinr(inst.channels, inst.activity, strongest, inst.receiver, k);
        const double s2 = smallcell_sinr(inst.channels, inst.activity, best, inst.receiver, k);
        CHECK(s1 <= full * (1.0 + 1e-9));
        CHECK(s2 <= full * (1.0 + 1e-9));
        CHECK(s2 >= s1 * (1.0 - 1e-12));
      }
    }
  }

  SUBCASE("rejects multi-AP assignments") {
    Rng rng(53);
    auto inst = random_instance(rng, 3, 1, 5, 2);
    CHECK_THROWS_AS(smallcell_sinr(inst.channels, inst.activity, full_clusters(3, 5, 1), inst.receiver,
                                   inst.activity.active[0]),
                    std::invalid_argument);
  }
}

TEST_CASE("symbol_estimate") {
  Rng rng(61);
  auto inst = random_instance(rng, 3, 2, 6, 3);
  const auto full = full_clusters(3, 6, 2);
  const int k = inst.activity.active[1];
  const auto v = mmse_combiner(inst.channels, inst.activity, full, inst.receiver, k);
  const Eigen::VectorXcd zero_noise = Eigen::VectorXcd::Zero(6);

  SUBCASE("single user, unit symbol, no noise") {
    const SlotActivity solo{{k}};
    const auto est = symbol_estimate(v, inst.channels, solo, full, k, {cd(1.0, 0.0)}, zero_noise);
    CHECK(std::abs(est.total() - v.dot(inst.channels.g.col(k))) < 1e-15);
    CHECK(est.interference == cd(0.0, 0.0));
  }

  SUBCASE("zero symbols leave only the noise term") {
    const Eigen::VectorXcd noise = Eigen::VectorXcd::Random(6);
    const auto est = symbol_estimate(v, inst.channels, inst.activity, full, k, {0.0, 0.0, 0.0}, noise);
    CHECK(std::abs(est.total() - v.dot(noise)) < 1e-15);
  }

  SUBCASE("shape errors") {
    CHECK_THROWS_AS(symbol_estimate(v, inst.channels, inst.activity, full, k, {1.0}, zero_noise),
                    std::invalid_argument);
    CHECK_THROWS_AS(symbol_estimate(v, inst.channels, inst.activity, full, k, {1.0, 1.0, 1.0},
                                    Eigen::VectorXcd::Zero(5)),
                    std::invalid_argument);
  }

  SUBCASE("empirical power ratio matches the SINR formula") {
    const auto uc = nearest_ap_clusters(inst.layout, 2);
    const auto vu = mmse_combiner(inst.channels, inst.activity, uc, inst.receiver, k);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    auto cn = [&](double power) { return std::sqrt(power) * cd(gauss(rng), gauss(rng)); };
    double desired = 0.0, rest = 0.0;
    const int draws = 100000;
    for (int t = 0; t < draws; ++t) {
      std::vector<cd> symbols;
      for (int i : inst.activity.active) symbols.push_back(cn(inst.receiver.tx_powers[i]));
      Eigen::VectorXcd noise(6);
      for (int m = 0; m < 6; ++m) noise(m) = cn(inst.receiver.noise_power);
      const auto est = symbol_estimate(vu, inst.channels, inst.activity, uc, k, symbols, noise);
      desired += std::norm(est.desired);
      rest += std::norm(est.interference + est.noise);
    }
    const double formula = sinr_from_combiner(vu, inst.channels, inst.activity, uc, inst.receiver, k);
    CHECK(relative_error(desired / rest, formula) < 0.05);
  }
}

TEST_CASE("slot_sinrs matches the per-user solve") {
  Rng rng(71);
  for (int trial = 0; trial < 28; ++trial) {
    const int l = 1 << (trial % 7);
    auto inst = random_instance(rng, l, 64 / l, 200, 1 + (trial * 11) % 90);
    const int n = 64 / l;
    const auto masks = {full_clusters(l, 200, n), nearest_ap_clusters(inst.layout, std::min(l, 4)),
                        smallcell_assignment(inst.channels, inst.activity, inst.receiver,
                                             ServingRule::kStrongestLargeScale)};
    for (const auto& mask : masks) {
      const auto batch = slot_sinrs(inst.channels, inst.activity, mask, inst.receiver);
      REQUIRE(batch.size() == inst.activity.active.size());
      for (std::size_t j = 0; j < batch.size(); ++j) {
        const double direct = mmse_sinr(inst.channels, inst.activity, mask, inst.receiver, inst.activity.active[j]);
        CHECK(relative_error(batch[j], direct) < 1e-6);
      }
    }
  }
  auto inst = random_instance(rng, 2, 2, 5, 0);
  CHECK(slot_sinrs(inst.channels, inst.activity, full_clusters(2, 5, 2), inst.receiver).empty());
}

TEST_CASE("network names round-trip") {
  for (Network n : kAllNetworks) CHECK(parse_network(to_string(n)) == n);
  CHECK_THROWS_AS(parse_network("mesh"), std::invalid_argument);
  CHECK(parse_serving_rule("best-instantaneous") == ServingRule::kBestInstantaneous);
}
