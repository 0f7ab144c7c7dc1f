#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "globalprop/config.hpp"
#include "globalprop/errors.hpp"

using namespace globalprop;

TEST_CASE("built-in parameter sets carry the published pulse tables") {
    cli::RunConfig ex1 = cli::builtin_example(1);
    REQUIRE(ex1.pulses.size() == 2);
    CHECK(ex1.pulses[0].amplitude == 0.05);
    CHECK(ex1.pulses[0].center == 23.5);
    CHECK(ex1.pulses[0].width == 3.90);
    CHECK(ex1.pulses[0].carrier == "res1");
    CHECK(ex1.pulses[1].amplitude == 0.08);
    CHECK(ex1.pulses[1].center == 21.5);
    CHECK(ex1.pulses[1].width == 4.50);
    CHECK(ex1.pulses[1].carrier == "res2");

    cli::RunConfig ex2 = cli::builtin_example(2);
    CHECK(ex2.pulses[0].amplitude == 0.09);
    CHECK(ex2.pulses[0].center == 22.5);
    CHECK(ex2.pulses[1].amplitude == 0.05);
    CHECK(ex2.pulses[1].center == 21.5);

    CHECK_THROWS_AS(cli::builtin_example(3), ConfigError);
}

TEST_CASE("missing required keys are named") {
    const std::string text =
        "[model]\nsurface1 = 0 0 -5 0.5 1\nsurface2 = 0 0 0 0 0.2\n"
        "[pulses]\npulse = amplitude=0.05 carrier=res1 center=23.5 width=3.9\n";
    try {
        cli::parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("mass") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected with their line number") {
    const std::string text =
        "[model]\nmass = 10\nsurface1 = 0 0 -5 0.5 1\nsurface2 = 0 0 0 0 0.2\n"
        "bogus_key = 3\n"
        "[pulses]\npulse = amplitude=0.05 carrier=res1 center=23.5 width=3.9\n";
    try {
        cli::parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bogus_key") != std::string::npos);
        CHECK(msg.find("line 5") != std::string::npos);
    }
}

TEST_CASE("serialization round trip is canonical") {
    cli::RunConfig config = cli::builtin_example(2);
    config.track = {1, 6, 37};
    config.field_scale = 2.5;
    const std::string canon = cli::serialize_config(config);
    cli::RunConfig reparsed = cli::parse_config(canon);
    CHECK(cli::serialize_config(reparsed) == canon);
    CHECK(cli::config_hash(reparsed) == cli::config_hash(config));

    // A differently formatted but equivalent file normalizes to the same form.
    std::string loose = canon;
    loose.insert(0, "# comment line\n\n");
    CHECK(cli::serialize_config(cli::parse_config(loose)) == canon);
}

TEST_CASE("config drives the model builder") {
    cli::RunConfig config = cli::builtin_example(1);
    auto model = cli::make_model(config);
    CHECK(model.size() == 60);
    CHECK(model.initial_index == 0);
    // res1/res2 resolve to the published carrier frequencies.
    CHECK(std::abs(model.pulses.pulses[0].carrier - 9.98449) < 1e-3);
    CHECK(std::abs(model.pulses.pulses[1].carrier - 4.77725) < 1e-3);
    // Numeric carriers pass through untouched.
    config.pulses[0].carrier = "3.25";
    auto model2 = cli::make_model(config);
    CHECK(model2.pulses.pulses[0].carrier == 3.25);
}

TEST_CASE("load_config reads files and reports unreadable paths") {
    const std::string path = "test_config_roundtrip.cfg";
    {
        std::ofstream out(path);
        out << cli::serialize_config(cli::builtin_example(1));
    }
    cli::RunConfig loaded = cli::load_config(path);
    CHECK(loaded.pulses[0].amplitude == 0.05);
    std::remove(path.c_str());
    CHECK_THROWS_AS(cli::load_config("does_not_exist.cfg"), ConfigError);
}
