#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "gfweno/global_flux.hpp"
#include "gfweno/steady.hpp"
#include "oracle_helpers.hpp"

using namespace gfweno;

namespace {

State fill(const Grid& grid, int comps, int ghost,
           const std::function<Vec(double)>& f) {
  State u(grid.n, comps, ghost);
  for (int j = u.first_node(); j <= u.last_node(); ++j) u.at(j) = f(grid.node(j));
  return u;
}

}  // namespace

TEST_CASE("singularity registry placement") {
  const Grid grid(-1.0, 1.0, 102);
  const BurgersModel model(2, Geometry::steady(
      [](double x) { return x <= 0.0 ? 0.1 * x : (x <= 0.5 ? 0.5 + x : 0.9 + x); },
      [](double x) { return x <= 0.0 ? 0.1 : 1.0; }));
  const SingularityRegistry reg =
      locate_singularities(grid, model, std::array{0.0, 0.5});
  REQUIRE(reg.entries().size() == 2);
  // x = 0 is node 51 (left-closed branch): right-adjacent interface.
  CHECK(reg.entries()[0].interface == 51);
  // x = 0.5 falls on the interface between nodes 76 and 77.
  CHECK(reg.entries()[1].interface == 76);
  CHECK(reg.entries()[0].h_left == doctest::Approx(0.0));
  CHECK(reg.entries()[0].h_right == doctest::Approx(0.5));

  const MultiStepRule am8 = multistep_weights(AdamsFamily::moulton, 8);
  CHECK_NOTHROW(reg.validate(am8, grid.n, 10));

  SingularityRegistry close;
  close.add(Singularity{40, 0.0, 1.0});
  close.add(Singularity{45, 1.0, 2.0});
  CHECK_THROWS_AS(close.validate(am8, grid.n, 10), ConfigError);
}

TEST_CASE("interior jumps register at their cell's interface") {
  const Grid grid(0.0, 1.0, 10);
  const BurgersModel model(2, Geometry::steady(
      [](double x) { return x <= 0.33 ? 0.0 : 1.0; }, [](double) { return 0.0; }));
  const SingularityRegistry reg =
      locate_singularities(grid, model, std::array{0.33});
  REQUIRE(reg.entries().size() == 1);
  CHECK(reg.entries()[0].interface == 3);  // jump inside cell [0.3, 0.4]
}

TEST_CASE("node-aligned jumps follow the branch the node evaluates on") {
  // Right-closed branch definition: the node carries the right limit, so the
  // jump must register at the left-adjacent interface.
  const Grid grid(-1.0, 1.0, 100);
  const BurgersModel model(2, Geometry::steady(
      [](double x) { return x < 0.0 ? 0.0 : 1.0; }, [](double) { return 0.0; }));
  const SingularityRegistry reg =
      locate_singularities(grid, model, std::array{0.0});
  REQUIRE(reg.entries().size() == 1);
  CHECK(reg.entries()[0].interface == 49);
}

TEST_CASE("source quadrature schedule near a singular interface") {
  SingularityRegistry reg;
  reg.add(Singularity{20, 0.0, 1.0});
  SUBCASE("moulton windows anchor at the first node right of the jump") {
    const SourceQuadrature quad(multistep_weights(AdamsFamily::moulton, 4), reg);
    CHECK(quad.cell(19).kind == CellQuadrature::Kind::standard);
    CHECK(quad.cell(20).kind == CellQuadrature::Kind::singular);
    const CellQuadrature c21 = quad.cell(21);
    CHECK(c21.kind == CellQuadrature::Kind::reduced);
    CHECK(c21.first_node == 21);
    CHECK(c21.weights.size() == 2);  // trapezoid
    CHECK(c21.weights[0] == doctest::Approx(0.5));
    const CellQuadrature c22 = quad.cell(22);
    CHECK(c22.weights.size() == 3);
    CHECK(c22.first_node == 21);
    // full order recovered once the standard window clears the interface
    CHECK(quad.cell(23).kind == CellQuadrature::Kind::standard);
    CHECK(quad.cell(23).first_node == 21);
  }
  SUBCASE("bashforth windows stay explicit") {
    const SourceQuadrature quad(multistep_weights(AdamsFamily::bashforth, 4), reg);
    const CellQuadrature c21 = quad.cell(21);
    CHECK(c21.kind == CellQuadrature::Kind::reduced);
    CHECK(c21.first_node == 21);
    CHECK(c21.weights.size() == 1);  // left rectangle
    CHECK(c21.weights[0] == doctest::Approx(1.0));
    CHECK(quad.cell(24).kind == CellQuadrature::Kind::standard);
    CHECK(quad.cell(24).first_node == 21);
  }
}

TEST_CASE("cell source integral") {
  const Grid grid(0.0, 1.0, 10);
  SUBCASE("zero source gives the zero vector") {
    const BurgersModel model(1, Geometry::steady([](double x) { return x; },
                                                 [](double) { return 1.0; }));
    const State u = fill(grid, 1, 8, [](double) { return Vec::scalar(0.0); });
    const MultiStepRule rule = multistep_weights(AdamsFamily::moulton, 4);
    CHECK(cell_source_integral(grid, u, model, rule, 4, 0.0)[0] == 0.0);
  }
  SUBCASE("polynomial integrands of degree q-1 are exact") {
    // S(U) = U with H = x turns nodal data into the integrand itself.
    const BurgersModel model(1, Geometry::steady([](double x) { return x; },
                                                 [](double) { return 1.0; }));
    oracle::Lcg rng(7);
    for (int q : {4, 6, 8})
      for (AdamsFamily fam : {AdamsFamily::bashforth, AdamsFamily::moulton}) {
        const MultiStepRule rule = multistep_weights(fam, q);
        std::vector<double> coeff;
        for (int d = 0; d < q; ++d) coeff.push_back(rng.uniform(-1.0, 1.0));
        const auto poly = [&](double x) {
          double v = 0.0;
          for (int d = q - 1; d >= 0; --d) v = v * x + coeff[static_cast<size_t>(d)];
          return v;
        };
        const auto anti = [&](double x) {
          double v = 0.0;
          for (int d = q - 1; d >= 0; --d)
            v = v * x + coeff[static_cast<size_t>(d)] / (d + 1);
          return v * x;
        };
        const State u =
            fill(grid, 1, 10, [&](double x) { return Vec::scalar(poly(x)); });
        const double got = cell_source_integral(grid, u, model, rule, 5, 0.0)[0];
        const double want = anti(grid.node(6)) - anti(grid.node(5));
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
      }
  }
  SUBCASE("AM4 on exp(2x) converges at fifth order per cell") {
    const BurgersModel model(2, Geometry::steady([](double x) { return x; },
                                                 [](double) { return 1.0; }));
    const MultiStepRule rule = multistep_weights(AdamsFamily::moulton, 4);
    double errs[2];
    int idx = 0;
    for (int n : {10, 20}) {
      const Grid g(0.0, 1.0, n);
      const State u = fill(g, 1, 8, [](double x) { return Vec::scalar(std::exp(x)); });
      const int cell = n / 2;
      const double got = cell_source_integral(g, u, model, rule, cell, 0.0)[0];
      const double want =
          0.5 * (std::exp(2 * g.node(cell + 1)) - std::exp(2 * g.node(cell)));
      errs[idx++] = std::abs(got - want);
    }
    CHECK(std::log2(errs[0] / errs[1]) > 4.6);
  }
}

TEST_CASE("global flux assembly invariants") {
  const Grid grid(0.0, 25.0, 50);
  const ShallowWaterModel swe(
      9.81, Geometry::steady([](double x) { return 0.01 * std::sin(x); },
                             [](double x) { return 0.01 * std::cos(x); }));
  const MultiStepRule rule = multistep_weights(AdamsFamily::moulton, 4);
  const SourceQuadrature quad(rule, SingularityRegistry{});
  const int ghost = 1 + rule.steps;
  const State u = fill(grid, 2, ghost, [](double x) {
    return Vec::pair(2.0 + 0.1 * std::sin(x), 1.0 + 0.05 * std::cos(x));
  });
  const GlobalFlux gf = build_global_flux(grid, u, swe, quad, 0.0);

  SUBCASE("R starts at zero and the mass component vanishes bitwise") {
    CHECK(gf.primitives.at(0)[0] == 0.0);
    CHECK(gf.primitives.at(0)[1] == 0.0);
    for (int j = gf.primitives.first_node(); j <= gf.primitives.last_node(); ++j)
      CHECK(gf.primitives.at(j)[0] == 0.0);
  }
  SUBCASE("telescoping sum matches the accumulated primitive bitwise") {
    double acc = 0.0;
    for (int c = 0; c < grid.n; ++c)
      acc += cell_source_integral(grid, u, swe, rule, c, 0.0)[1];
    CHECK(acc == gf.primitives.at(grid.n)[1]);
  }
  SUBCASE("modified fluxes subtract the primitive") {
    for (int j = -2; j <= grid.n + 2; ++j) {
      const Vec want = swe.flux(u.at(j)) - gf.primitives.at(j);
      CHECK(gf.modified.at(j)[0] == want[0]);
      CHECK(gf.modified.at(j)[1] == want[1]);
    }
  }
}

TEST_CASE("zero-source models keep R identically zero") {
  const Grid grid(0.0, 1.0, 20);
  const BurgersModel model(1, Geometry::flat());  // H_x = 0, s = 0
  const MultiStepRule rule = multistep_weights(AdamsFamily::bashforth, 6);
  const SourceQuadrature quad(rule, SingularityRegistry{});
  const State u = fill(grid, 1, 1 + rule.steps,
                       [](double x) { return Vec::scalar(std::sin(x)); });
  const GlobalFlux gf = build_global_flux(grid, u, model, quad, 0.0);
  for (int j = gf.primitives.first_node(); j <= gf.primitives.last_node(); ++j) {
    CHECK(gf.primitives.at(j)[0] == 0.0);
    CHECK(gf.modified.at(j)[0] == model.flux(u.at(j))[0]);
  }
}

TEST_CASE("source linearizations satisfy the jump relation") {
  SUBCASE("equal states reduce to S(U)") {
    CHECK(burgers_source_linearization(3.0, 3.0, 1) == doctest::Approx(3.0));
    CHECK(burgers_source_linearization(3.0, 3.0, 2) == doctest::Approx(9.0));
    CHECK(burgers_source_linearization(2.0, 2.0, 3) == doctest::Approx(8.0));
    CHECK(swe_depth_linearization(2.0, 2.0, 0.0, 9.81) == doctest::Approx(2.0));
  }
  SUBCASE("burgers p=2 across an admissible jump reproduces [[F]]") {
    // U e^{-H} = 1 with H: 0 -> 0.5
    const double ul = 1.0, ur = std::exp(0.5);
    const double stilde = burgers_source_linearization(ul, ur, 2);
    CHECK(stilde * 0.5 ==
          doctest::Approx(0.5 * (ur * ur - ul * ul)).epsilon(1e-13));
  }
  SUBCASE("near-equal states use the series limit") {
    const double ul = 2.0, ur = 2.0 * (1.0 + 1e-10);
    const double stilde = burgers_source_linearization(ul, ur, 2);
    CHECK(stilde == doctest::Approx(4.0).epsilon(1e-9));
  }
  SUBCASE("water at rest jump gives the hydrostatic difference") {
    const ShallowWaterModel swe(9.81, Geometry::flat());
    const double hl = 2.0, hr = 2.1;  // η continuous, [[H]] = 0.1
    const Vec integral = singular_cell_integral(Vec::pair(hl, 0.0),
                                                Vec::pair(hr, 0.0), swe, 0.0, 0.1);
    CHECK(integral[0] == 0.0);
    CHECK(integral[1] == doctest::Approx(0.5 * 9.81 * (hr * hr - hl * hl))
                             .epsilon(1e-13));
  }
  SUBCASE("resonant jumps are rejected") {
    // q̄² h̄ = g (h_l h_r)² at h_l = h_r = h: q = sqrt(g h³) (sonic state)
    const double h = 1.3, q = std::sqrt(9.81 * h * h * h);
    CHECK_THROWS_AS(swe_depth_linearization(h, h, q, 9.81), SingularJumpError);
  }
}

TEST_CASE("quadrature-consistent bathymetry") {
  SUBCASE("constant slope accumulates exactly") {
    const Grid grid(0.0, 2.0, 16);
    const ShallowWaterModel swe(9.81, Geometry::steady(
        [](double x) { return 3.0 * x + 1.0; }, [](double) { return 3.0; }));
    const SourceQuadrature quad(multistep_weights(AdamsFamily::moulton, 4), {});
    const NodalField ht = accumulate_bathymetry(grid, swe, quad, 5);
    for (int j = ht.first_node(); j <= ht.last_node(); ++j)
      CHECK(ht.at(j)[0] == doctest::Approx(3.0 * grid.node(j) + 1.0).epsilon(1e-14));
  }
  SUBCASE("polynomial bathymetry of degree q is nodally exact") {
    const Grid grid(0.0, 1.0, 12);
    const ShallowWaterModel swe(9.81, Geometry::steady(
        [](double x) { return x * x * x * x - 0.3 * x * x; },
        [](double x) { return 4.0 * x * x * x - 0.6 * x; }));
    const SourceQuadrature quad(multistep_weights(AdamsFamily::moulton, 4), {});
    const NodalField ht = accumulate_bathymetry(grid, swe, quad, 5);
    for (int j = ht.first_node(); j <= ht.last_node(); ++j) {
      const double x = grid.node(j);
      CHECK(ht.at(j)[0] ==
            doctest::Approx(x * x * x * x - 0.3 * x * x).epsilon(1e-12));
    }
  }
  SUBCASE("smooth bathymetry converges at the rule's order") {
    const ShallowWaterModel swe(9.81, Geometry::steady(
        [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }));
    double errs[2];
    int idx = 0;
    for (int n : {20, 40}) {
      const Grid grid(0.0, 3.0, n);
      const SourceQuadrature quad(multistep_weights(AdamsFamily::moulton, 4), {});
      const NodalField ht = accumulate_bathymetry(grid, swe, quad, 4);
      double worst = 0.0;
      for (int j = 0; j <= n; ++j)
        worst = std::max(worst, std::abs(ht.at(j)[0] - std::sin(grid.node(j))));
      errs[idx++] = worst;
    }
    CHECK(std::log2(errs[0] / errs[1]) > 3.6);
  }
}

TEST_CASE("water-at-rest integral") {
  SUBCASE("flat bottom gives zero") {
    const Grid grid(0.0, 1.0, 10);
    const ShallowWaterModel swe(9.81, Geometry::flat());
    const SourceQuadrature quad(multistep_weights(AdamsFamily::moulton, 4), {});
    const NodalField ht = accumulate_bathymetry(grid, swe, quad, 4);
    const State u = fill(grid, 2, 4, [](double x) {
      return Vec::pair(2.0 + 0.3 * std::sin(x), 0.7 * std::cos(x));
    });
    CHECK(water_at_rest_integral(grid, u, swe, quad, ht, 4, 0.0) == 0.0);
  }
  SUBCASE("constant eta over a linear bottom") {
    const Grid grid(0.0, 1.0, 10);
    const double g = 9.81, eta = 0.6, slope = 2.0;
    const ShallowWaterModel swe(g, Geometry::steady(
        [](double x) { return 2.0 * x; }, [](double) { return 2.0; }));
    const SourceQuadrature quad(multistep_weights(AdamsFamily::moulton, 4), {});
    const NodalField ht = accumulate_bathymetry(grid, swe, quad, 4);
    const State u = fill(grid, 2, 4, [&](double x) {
      return Vec::pair(eta + slope * x, 0.0);
    });
    const int cell = 4;
    const double hl = ht.at(cell)[0], hr = ht.at(cell + 1)[0];
    const double want = g * eta * (hr - hl) + 0.5 * g * (hr * hr - hl * hl);
    CHECK(water_at_rest_integral(grid, u, swe, quad, ht, cell, 0.0) ==
          doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("C-property: lake data makes the modified flux constant") {
  // Discontinuous bump with the step registered at an interface; the
  // accumulated bathymetry defines the rest state.
  const Grid grid(0.0, 25.0, 50);
  const ShallowWaterModel swe(
      9.81,
      Geometry::steady(
          [](double x) {
            const double w = x - 12.5;
            const double bump = -0.05 * std::sin(w) * std::exp(1.0 - w * w);
            return x <= 14.0 ? bump : bump + 0.1;
          },
          [](double x) {
            const double w = x - 12.5;
            return -0.05 * std::exp(1.0 - w * w) * (std::cos(w) - 2.0 * w * std::sin(w));
          }));
  for (int q : {4, 6, 8}) {
    const MultiStepRule rule = multistep_weights(AdamsFamily::moulton, q);
    const SingularityRegistry reg = locate_singularities(grid, swe, std::array{14.0});
    const SourceQuadrature quad(rule, reg);
    const int ghost = 3 + rule.steps;
    const NodalField ht = accumulate_bathymetry(grid, swe, quad, ghost);
    State u(grid.n, 2, ghost);
    for (int j = u.first_node(); j <= u.last_node(); ++j)
      u.at(j) = Vec::pair(2.0 + ht.at(j)[0], 0.0);
    GlobalFluxOptions opt;
    opt.water_at_rest = true;
    opt.quad_bathymetry = &ht;
    const GlobalFlux gf = build_global_flux(grid, u, swe, quad, 0.0, opt);
    const Vec ref = gf.modified.at(0);
    for (int j = -3; j <= grid.n + 3; ++j) {
      CHECK(std::abs(gf.modified.at(j)[0] - ref[0]) < 1e-13);
      CHECK(std::abs(gf.modified.at(j)[1] - ref[1]) < 1e-12);
    }
  }
}
