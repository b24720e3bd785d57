#include <doctest.h>

#include <random>

#include "pbp/csv.hpp"
#include "pbp/pgm.hpp"
#include "pbp/scanner.hpp"
#include "test_support.hpp"

using namespace pbp;
using namespace pbptest;

TEST_SUITE("read_pgm") {
    TEST_CASE("smallest ascii checker") {
        const GrayImage img = read_pgm("P2\n2 2\n255\n0 255\n255 0\n");
        CHECK(img.width == 2);
        CHECK(img.height == 2);
        CHECK(img.pixels == std::vector<std::uint8_t>{0, 255, 255, 0});
    }

    TEST_CASE("header comments are skipped") {
        const GrayImage img =
            read_pgm("P2\n# a comment\n2 1 # trailing\n255\n7 9\n");
        CHECK(img.pixels == std::vector<std::uint8_t>{7, 9});
    }

    TEST_CASE("binary and ascii twins parse identically") {
        std::mt19937 rng(91);
        const GrayImage img = random_gray(rng, 9, 5);
        CHECK(read_pgm(write_pgm(img, PgmFormat::Binary)) == img);
        CHECK(read_pgm(write_pgm(img, PgmFormat::Ascii)) == img);
    }

    TEST_CASE("maxval below 255 rescales") {
        const GrayImage img = read_pgm("P2\n3 1\n4\n0 2 4\n");
        CHECK(img.pixels == std::vector<std::uint8_t>{0, 128, 255});
    }

    TEST_CASE("error paths") {
        CHECK_THROWS_WITH_AS(read_pgm("P5\n2 2\n255\n\x01\x02"),
                             doctest::Contains("truncated"), ParseError);
        CHECK_THROWS_AS(read_pgm("P2\n2 2\n255\n1 2 3\n"), ParseError);
        CHECK_THROWS_AS(read_pgm("P2\n2 2\n300\n0 0 0 0\n"), ParseError);
        CHECK_THROWS_AS(read_pgm("Px\n2 2\n255\n0 0 0 0\n"), ParseError);
        CHECK_THROWS_AS(read_pgm(""), ParseError);
        CHECK_THROWS_AS(read_pgm("P2\n2 2\n255\n0 0 0 999\n"), ParseError);
    }
}

TEST_SUITE("write_pgm") {
    TEST_CASE("fixed binary header") {
        const GrayImage img(3, 2, 0);
        const std::string bytes = write_pgm(img);
        CHECK(bytes.substr(0, 11) == "P5\n3 2\n255\n");
        CHECK(bytes.size() == 11 + 6);
    }

    TEST_CASE("binary round-trip is bit-exact") {
        std::mt19937 rng(93);
        for (int trial = 0; trial < 20; ++trial) {
            const GrayImage img = random_gray(rng, 1 + int(rng() % 16),
                                              1 + int(rng() % 16));
            const std::string bytes = write_pgm(img);
            CHECK(read_pgm(bytes) == img);
            CHECK(write_pgm(read_pgm(bytes)) == bytes);
        }
    }

    TEST_CASE("one-pixel image") {
        GrayImage img(1, 1, 0);
        img.at(0, 0) = 200;
        const std::string bytes = write_pgm(img);
        CHECK(bytes == std::string("P5\n1 1\n255\n") + char(200));
    }

    TEST_CASE("edge masks serialize like binary images") {
        EdgeMask mask(2, 2);
        mask.at(0, 1) = 255;
        const GrayImage round = read_pgm(write_pgm(mask));
        CHECK(round.pixels == std::vector<std::uint8_t>{0, 255, 0, 0});
    }
}

TEST_SUITE("read_ppm and read_image_auto") {
    TEST_CASE("color input converts through luma") {
        const std::string p3 = "P3\n1 1\n255\n255 0 0\n";
        CHECK(read_image_auto(p3).at(0, 0) == 76);
        const RgbImage rgb = read_ppm(p3);
        CHECK(rgb.at(0, 0, 0) == 255);
        CHECK(rgb.at(0, 0, 1) == 0);
    }

    TEST_CASE("auto dispatch accepts gray formats") {
        CHECK(read_image_auto("P2\n1 1\n255\n9\n").at(0, 0) == 9);
    }
}

TEST_SUITE("matrix csv") {
    TEST_CASE("parses the worked matrix") {
        const CostMatrix m =
            read_matrix_csv("8,8,8,5\n12,7,5,7\n18,2,3,1\n5,18,9,8");
        CHECK(m == worked_matrix());
    }

    TEST_CASE("round-trips random matrices") {
        std::mt19937 rng(97);
        for (int trial = 0; trial < 50; ++trial) {
            const CostMatrix m = random_matrix(rng, 8, 500);
            CHECK(read_matrix_csv(write_matrix_csv(m)) == m);
        }
    }

    TEST_CASE("tolerates spaces and a trailing newline") {
        const CostMatrix m = read_matrix_csv(" 1 , 2 \n3,4\n");
        CHECK(m == CostMatrix(2, 2, {1, 2, 3, 4}));
    }

    TEST_CASE("error paths") {
        CHECK_THROWS_AS(read_matrix_csv(""), ParseError);
        CHECK_THROWS_AS(read_matrix_csv("1,2\n3\n"), ParseError);
        CHECK_THROWS_AS(read_matrix_csv("1,-2\n"), ParseError);
        CHECK_THROWS_AS(read_matrix_csv("1,2.5\n"), ParseError);
        CHECK_THROWS_AS(read_matrix_csv("1,x\n"), ParseError);
        CHECK_THROWS_AS(read_matrix_csv("1,\n"), ParseError);
    }
}

TEST_SUITE("degree csv") {
    TEST_CASE("row-major cells") {
        DegreeMap dm;
        dm.grid_rows = 2;
        dm.grid_cols = 3;
        dm.cells = {0, 1, 2, 3, 4, 5};
        CHECK(write_degree_csv(dm) == "0,1,2\n3,4,5\n");
    }

    TEST_CASE("degree csv reads back as a matrix") {
        DegreeMap dm;
        dm.grid_rows = 2;
        dm.grid_cols = 2;
        dm.cells = {5, 0, 3, 1};
        const CostMatrix m = read_matrix_csv(write_degree_csv(dm));
        CHECK(m.at(0, 0) == 5);
        CHECK(m.at(1, 1) == 1);
    }
}
