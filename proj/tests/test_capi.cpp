#include "ymh/ymh.h"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

TEST_CASE("status names and last error")
{
    CHECK(std::string(ymh_status_name(YMH_OK)) == "OK");
    CHECK(std::string(ymh_version()).size() > 0);
    double out = 0.0;
    const ymh_params bad{-1.0, 1.0};
    CHECK(ymh_omega(&bad, &out) == YMH_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(ymh_last_error()) > 0);
    const ymh_params p{1.0, 1.0};
    CHECK(ymh_omega(&p, &out) == YMH_OK);
    CHECK(out == doctest::Approx(std::sqrt(2.0)));
    CHECK(ymh_omega(nullptr, &out) == YMH_ERR_INVALID_ARGUMENT);
    CHECK(ymh_omega(&p, nullptr) == YMH_ERR_INVALID_ARGUMENT);
}

TEST_CASE("model entry points")
{
    const ymh_params p{1.0, 1.0};
    double x = 0.0;
    CHECK(ymh_critical_energy(&p, &x) == YMH_OK);
    CHECK(x == doctest::Approx(6.0));
    CHECK(ymh_critical_vacuum(10.0, 1.0, &x) == YMH_OK);
    CHECK(x == doctest::Approx(std::pow(10.0 / 6.0, 0.25)));
    CHECK(ymh_curvature_discriminant(&p, std::sqrt(2.0), std::sqrt(2.0), &x) == YMH_OK);
    CHECK(x == doctest::Approx(0.0).epsilon(1e-12));
    double q1 = 0, q2 = 0, e = 0;
    CHECK(ymh_zero_curvature_minimum(&p, &q1, &q2, &e) == YMH_OK);
    CHECK(e == doctest::Approx(6.0).epsilon(1e-6));
    const ymh_params flat{1.0, 0.0};
    CHECK(ymh_critical_energy(&flat, &x) == YMH_ERR_INVALID_ARGUMENT);
}

TEST_CASE("trajectory and section handles")
{
    const ymh_params p{1.0, 1.0};
    ymh_state s0{};
    CHECK(ymh_seed_on_shell(&p, 10.0, 0.0, 0.0, &s0) == YMH_OK);
    CHECK(s0.p1 == doctest::Approx(std::sqrt(20.0)));
    CHECK(ymh_seed_on_shell(&p, 1.0, 5.0, 0.0, &s0) == YMH_ERR_OFF_SHELL);
    CHECK(ymh_seed_on_shell(&p, 10.0, 0.0, 0.0, &s0) == YMH_OK);

    ymh_integrator_config cfg = ymh_integrator_config_default();
    CHECK(cfg.step_h == 1e-3);
    cfg.t_max = 1.0;
    ymh_trajectory* traj = nullptr;
    REQUIRE(ymh_integrate(&p, &s0, &cfg, &traj) == YMH_OK);
    CHECK(ymh_trajectory_size(traj) == 1001);
    ymh_state last{};
    CHECK(ymh_trajectory_sample(traj, 1000, &last) == YMH_OK);
    CHECK(last.t == doctest::Approx(1.0));
    CHECK(ymh_trajectory_sample(traj, 1001, &last) == YMH_ERR_INVALID_ARGUMENT);
    CHECK(ymh_trajectory_initial_energy(traj) == doctest::Approx(10.0));
    CHECK(ymh_trajectory_max_drift(traj) < 1e-9);
    ymh_trajectory_free(traj);
    ymh_trajectory_free(nullptr);

    cfg.t_max = 50.0;
    ymh_section* sec = nullptr;
    REQUIRE(ymh_poincare_section(&p, &s0, &cfg, 5, &sec) == YMH_OK);
    CHECK(ymh_section_size(sec) == 5);
    double t = 0, q2 = 1, p2 = 1;
    CHECK(ymh_section_point(sec, 0, &t, &q2, &p2) == YMH_OK);
    CHECK(q2 == 0.0);
    CHECK(p2 == 0.0);
    CHECK(ymh_section_energy(sec) == doctest::Approx(10.0));
    ymh_section_free(sec);

    const ymh_state still{0, 1, 0, 0, 0};
    sec = reinterpret_cast<ymh_section*>(&sec);
    CHECK(ymh_poincare_section(&p, &still, &cfg, 5, &sec) == YMH_ERR_DEGENERATE_ORBIT);
    CHECK(sec == nullptr);

    cfg.step_h = 0.3;
    cfg.t_max = 100.0;
    ymh_state s1{};
    ymh_seed_on_shell(&p, 10.0, 0.5, 0.0, &s1);
    CHECK(ymh_integrate(&p, &s1, &cfg, &traj) == YMH_ERR_ENERGY_DRIFT);
}

TEST_CASE("seed lists")
{
    ymh_seed_list* seeds = nullptr;
    REQUIRE(ymh_seed_list_default(&seeds) == YMH_OK);
    bool probe = false;
    for (size_t i = 0; i < ymh_seed_list_size(seeds); ++i) {
        const char* label = nullptr;
        double a = 0, b = 0;
        REQUIRE(ymh_seed_list_get(seeds, i, &label, &a, &b) == YMH_OK);
        if (std::string(label) == "chaos_probe")
            probe = true;
        CHECK(a * a + b * b <= 1.0);
    }
    CHECK(probe);
    ymh_seed_list_free(seeds);

    CHECK(ymh_seed_list_parse("x 2 0\n", &seeds) == YMH_ERR_INVALID_ARGUMENT);
    REQUIRE(ymh_seed_list_parse("only 0.5 0\n", &seeds) == YMH_OK);
    CHECK(ymh_seed_list_size(seeds) == 1);
    ymh_seed_list_free(seeds);

    const ymh_params p{1.0, 1.1};
    ymh_state s{};
    CHECK(ymh_seed_state(&p, 10.0, 0.5, 0.0, &s) == YMH_OK);
    double e = 0.0;
    ymh_total_energy(&p, &s, &e);
    CHECK(e == doctest::Approx(10.0));
}

TEST_CASE("spectra handles")
{
    const ymh_params p{1.0, 1.0};
    CHECK(std::string(ymh_sector_label(YMH_SECTOR_OO_ANTI)) == "oo-");
    double x = 0.0;
    CHECK(ymh_v_element(&p, 0, 0, 0, 0, &x) == YMH_OK);
    CHECK(x == doctest::Approx(1.0 / 8.0));
    CHECK(ymh_h0_element(&p, -1, 0, 0, 0, &x) == YMH_ERR_INVALID_ARGUMENT);

    ymh_spectrum* one = nullptr;
    REQUIRE(ymh_spectrum_diagonalize(&p, YMH_SECTOR_EE, 0, 1.0, &one) == YMH_OK);
    REQUIRE(ymh_spectrum_size(one) == 1);
    CHECK(ymh_spectrum_levels(one)[0] == doctest::Approx(std::sqrt(2.0) + 1.0 / 16.0));
    CHECK(std::string(ymh_spectrum_label(one)) == "ee");
    ymh_spectrum_free(one);
    CHECK(ymh_spectrum_diagonalize(&p, static_cast<ymh_sector>(42), 4, 1.0, &one)
          == YMH_ERR_INVALID_ARGUMENT);

    ymh_convergence_options opt = ymh_convergence_options_default();
    CHECK(opt.n_levels == 100);
    CHECK(opt.digits == 8);
    opt.n_levels = 20;
    ymh_spectrum* blocks[4] = {};
    REQUIRE(ymh_spectrum_converge_parity_blocks(&p, &opt, blocks) == YMH_OK);
    const char* labels[] = {"ee", "oo", "eo", "oe"};
    for (int k = 0; k < 4; ++k) {
        CHECK(std::string(ymh_spectrum_label(blocks[k])) == labels[k]);
        CHECK(ymh_spectrum_size(blocks[k]) == 20);
        CHECK(ymh_spectrum_n_converged(blocks[k]) == 20);
        CHECK(ymh_spectrum_digits(blocks[k]) == 8);
        const size_t rounds = ymh_spectrum_rounds(blocks[k]);
        REQUIRE(rounds >= 2);
        int n_max = 0;
        const double* lv = nullptr;
        size_t count = 0;
        CHECK(ymh_spectrum_round(blocks[k], rounds - 1, &n_max, &lv, &count) == YMH_OK);
        CHECK(n_max == ymh_spectrum_n_max(blocks[k]));
        CHECK(ymh_spectrum_round(blocks[k], rounds, &n_max, &lv, &count) == YMH_ERR_INVALID_ARGUMENT);
        ymh_spectrum_free(blocks[k]);
    }

    opt.max_dimension = 50;
    opt.n_levels = 40;
    CHECK(ymh_spectrum_converge(&p, YMH_SECTOR_EE, &opt, &one) == YMH_ERR_NO_CONVERGENCE);
}

TEST_CASE("ensemble, fit and histogram")
{
    ymh_ensemble* ens = nullptr;
    REQUIRE(ymh_ensemble_create(&ens) == YMH_OK);
    std::vector<double> lv;
    for (int k = 0; k < 60; ++k)
        lv.push_back(0.5 * k * k + 3.0 * k);
    CHECK(ymh_ensemble_add_levels(ens, lv.data(), 12, 6, "short") == YMH_ERR_INSUFFICIENT_DATA);
    REQUIRE(ymh_ensemble_add_levels(ens, lv.data(), lv.size(), 6, "a") == YMH_OK);
    std::vector<double> s(40, 1.0);
    REQUIRE(ymh_ensemble_add_spacings(ens, s.data(), s.size(), "b") == YMH_OK);
    CHECK(ymh_ensemble_size(ens) == 59 + 40);
    CHECK(ymh_ensemble_blocks(ens) == 2);
    CHECK(ymh_ensemble_block_count(ens, 1) == 40);
    double sum = 0.0;
    for (size_t i = 0; i < 59; ++i)
        sum += ymh_ensemble_spacings(ens)[i];
    CHECK(sum / 59 == doctest::Approx(1.0).epsilon(1e-12));

    ymh_brody_fit fit{};
    REQUIRE(ymh_fit_brody(ens, &fit) == YMH_OK);
    CHECK(fit.brody_q == 1.0);
    CHECK(fit.at_boundary != 0);

    size_t n_bins = 0;
    REQUIRE(ymh_histogram(ens, 0.25, 4.0, nullptr, nullptr, nullptr, 0, &n_bins) == YMH_OK);
    CHECK(n_bins == 16);
    std::vector<double> c(n_bins), d(n_bins);
    std::vector<size_t> cnt(n_bins);
    CHECK(ymh_histogram(ens, 0.25, 4.0, c.data(), d.data(), cnt.data(), 3, &n_bins)
          == YMH_ERR_BUFFER_TOO_SMALL);
    REQUIRE(ymh_histogram(ens, 0.25, 4.0, c.data(), d.data(), cnt.data(), c.size(), &n_bins) == YMH_OK);
    size_t total = 0;
    for (size_t v : cnt)
        total += v;
    CHECK(total == 99);
    ymh_ensemble_free(ens);

    REQUIRE(ymh_ensemble_create(&ens) == YMH_OK);
    CHECK(ymh_fit_brody(ens, &fit) == YMH_ERR_INSUFFICIENT_DATA);
    ymh_ensemble_free(ens);

    double pdf = 0.0;
    CHECK(ymh_brody_pdf(1.0, 0.0, &pdf) == YMH_OK);
    CHECK(pdf == doctest::Approx(std::exp(-1.0)));
    CHECK(ymh_brody_pdf(1.0, 2.0, &pdf) == YMH_ERR_INVALID_ARGUMENT);
    CHECK(ymh_wigner_pdf(0.0, &pdf) == YMH_OK);
    CHECK(pdf == 0.0);
}
