#include <doctest.h>

#include <sstream>

#include "prodcode/serialize.hpp"
#include "support.hpp"

using namespace prodcode;

TEST_SUITE("serialize") {

TEST_CASE("field and pair JSON") {
    CHECK(field_json(Field(4)).dump() == R"({"M":4,"reduction_poly_hex":"13"})");
    const auto pair = instantiate_standard(2);
    const Json j = pair_json(pair);
    CHECK(j["q"] == 4);
    CHECK(j["M"] == 4);
    CHECK(j["reduction_poly_hex"] == "13");
    CHECK(j["Zf_hex"] == Json::array({"0", "1", "6", "7"}));
    CHECK(j["Zg_hex"] == Json::array({"0", "2", "c", "e"}));
    CHECK(j["f_coeffs_hex"].size() == 2);
}

TEST_CASE("profile JSON") {
    const Json j = profile_json(degree_profile(4, 3));
    CHECK(j["D"] == Json::array({0, 1, 2, 4, 5, 8, 9, 12, 16}));
    CHECK(j["breakpoints"].size() == 5);
    CHECK(j["breakpoints"][2]["k_t"] == 7);
    CHECK(j["breakpoints"][2]["partial"] == 9);
    CHECK(j["reaches_length"] == true);
    CHECK(profile_json(degree_profile(32, 8))["reaches_length"] == false);
}

TEST_CASE("generator CSV") {
    const auto code = testing::standard_code(2, 2, 2);
    std::ostringstream os;
    write_generator_csv(os, code);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == R"(# {"q":4,"M":4,"reduction_poly_hex":"13","r":2,"k":2,"coordinate_order":"Zf-major"})");
    std::getline(in, line);
    CHECK(line == "1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1");
    int rows = 1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("bound CSV rows") {
    const auto p = degree_profile(4, 2);
    CHECK(bound_csv_row(bound_report(p, 1)) == "1,0,16,16,16,16,,16,2,2,3,4");
    CHECK(bound_csv_row(bound_report(p, 4)) == "4,8,8,9,11,9,9,9,1,1,3,3");
    const auto q = degree_profile(32, 8);
    const auto row = bound_csv_row(bound_report(q, 30));
    CHECK(row.find(",,") != std::string::npos);  // no exact value at k = 30
    CHECK(bound_json(bound_report(q, 30))["exact"].is_null());
}

TEST_CASE("spectrum CSV") {
    WeightSpectrum s;
    s.counts = {{0, 1}, {9, 36}};
    std::ostringstream os;
    write_spectrum_csv(os, s);
    CHECK(os.str() == "weight,count\n0,1\n9,36\n");
}

TEST_CASE("mask RLE round trip") {
    const auto m = grid_bound_pattern(8, 3, 1, 2, true);
    const auto text = mask_to_rle(m);
    CHECK(text.rfind(R"({"n_frak":8})" "\n", 0) == 0);
    CHECK(mask_from_rle(text) == m);
    CHECK(mask_to_rle(ErasureMask(2)) == "{\"n_frak\":2}\n0x4\n");
    CHECK_THROWS_AS(mask_from_rle("{\"n_frak\":2}\n0x3\n"), std::invalid_argument);
    CHECK_THROWS_AS(mask_from_rle("{\"n_frak\":2}\n0x5\n"), std::invalid_argument);
    CHECK_THROWS_AS(mask_from_rle("{\"n_frak\":2}\n2x4\n"), std::invalid_argument);
    CHECK_THROWS_AS(mask_from_rle("not json\n0x4\n"), std::invalid_argument);
    CHECK_THROWS_AS(mask_from_rle(""), std::invalid_argument);
}

}  // TEST_SUITE
