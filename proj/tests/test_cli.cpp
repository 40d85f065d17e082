#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "flagnet/cli.hpp"
#include "flagnet/codes.hpp"
#include "flagnet/textio.hpp"

using namespace flagnet;

namespace {

struct RunResult {
    int rc;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int rc = cli::run(args, out, err);
    return {rc, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("flagnet_cli_" + name)).string();
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = temp_path(name);
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::string reference_code_text =
    "flagcode v1\nGF(3)\nn=4\ndim=4\n"
    "1,0,1,1;0,1,0,0;0,0,1,1;0,0,0,0\n"
    "0,2,1,0;0,2,2,0;0,0,1,0;0,0,0,1\n"
    "0,0,1,0;0,0,0,1;0,0,0,0;0,0,0,0\n"
    "0,0,0,1;0,0,2,0;0,0,0,0;0,0,0,0\n";

std::string reference_code_file() { return write_temp("ref.code", reference_code_text); }

}  // namespace

TEST_CASE("gen-code kinds and output channels") {
    const RunResult to_stdout = run_cli({"gen-code", "--q", "3", "--n", "4", "--kind", "example-T"});
    CHECK(to_stdout.rc == 0);
    CHECK(to_stdout.out == reference_code_text);
    CHECK(to_stdout.err.empty());

    const std::string path = temp_path("gen.code");
    const RunResult to_file =
        run_cli({"gen-code", "--q", "3", "--n", "4", "--kind", "example-T", "--out", path});
    CHECK(to_file.rc == 0);
    CHECK(to_file.out.empty());
    CHECK(slurp(path) == reference_code_text);

    // Construction files parse back into the construction.
    const RunResult even = run_cli({"gen-code", "--q", "2", "--n", "3", "--kind", "max-distance"});
    CHECK(even.rc == 0);
    const FlagRankCode parsed = code_file_parse(even.out);
    CHECK(parsed.dim() == 2);
    CHECK(parsed.min_distance() == 4);

    // Random generation is seed-reproducible.
    const std::vector<std::string> rnd = {"gen-code", "--q",    "3",  "--n",    "3",
                                          "--kind",   "random", "--dim", "2", "--seed", "11"};
    CHECK(run_cli(rnd).out == run_cli(rnd).out);
    CHECK(code_file_parse(run_cli(rnd).out).dim() == 2);
}

TEST_CASE("gen-code argument validation") {
    CHECK(run_cli({"gen-code", "--q", "6", "--n", "2", "--kind", "max-distance"}).rc == 2);
    CHECK(run_cli({"gen-code", "--q", "6", "--n", "2", "--kind", "max-distance"}).err ==
          "error: field size 6 is not a prime power\n");
    CHECK(run_cli({"gen-code", "--q", "3", "--n", "3", "--kind", "example-T"}).rc == 2);
    CHECK(run_cli({"gen-code", "--q", "2", "--n", "0", "--kind", "max-distance"}).rc == 2);
    CHECK(run_cli({"gen-code", "--q", "2", "--n", "2", "--kind", "bogus"}).rc == 2);
    CHECK(run_cli({"gen-code", "--q", "2", "--n", "2", "--kind", "random"}).rc == 2);
    CHECK(run_cli({"gen-code", "--q", "2", "--n", "2", "--kind", "random", "--dim", "0",
                   "--seed", "1"}).rc == 2);
    CHECK(run_cli({"gen-code", "--q", "2", "--n", "2", "--kind", "random", "--dim", "2"}).rc == 2);
    CHECK(run_cli({"gen-code", "--q", "2", "--n", "2", "--kind", "max-distance", "--dim", "2"})
              .rc == 2);
    CHECK(run_cli({"gen-code", "--n", "2", "--kind", "max-distance"}).rc == 2);  // missing --q
}

TEST_CASE("code-info reports the reference parameters") {
    const RunResult r = run_cli({"code-info", reference_code_file()});
    CHECK(r.rc == 0);
    CHECK(r.out ==
          "field: GF(3)\n"
          "n: 4\n"
          "dim: 4\n"
          "min distance: 5\n"
          "dual dim: 6\n"
          "d_max: 6\n");
}

TEST_CASE("code-info on an extension field construction") {
    const std::string path = temp_path("gf4.code");
    CHECK(run_cli({"gen-code", "--q", "4", "--n", "3", "--kind", "max-distance", "--out", path})
              .rc == 0);
    const RunResult r = run_cli({"code-info", path});
    CHECK(r.rc == 0);
    CHECK(r.out ==
          "field: GF(2^2; 1,1,1)\n"
          "n: 3\n"
          "dim: 2\n"
          "min distance: 4\n"
          "dual dim: 4\n"
          "d_max: 4\n");
}

TEST_CASE("code-info skips the distance scan past the enumeration budget") {
    const std::string path = temp_path("wide.code");
    CHECK(run_cli({"gen-code", "--q", "2", "--n", "8", "--kind", "random", "--dim", "25",
                   "--seed", "3", "--out", path})
              .rc == 0);
    const RunResult r = run_cli({"code-info", path});
    CHECK(r.rc == 0);
    CHECK(r.out.find("min distance: skipped (minimum distance requires enumerating 2^25 "
                     "elements; the enumeration budget is 2^24 = 16777216)\n") !=
          std::string::npos);
    CHECK(r.out.find("dual dim: 11\n") != std::string::npos);
    CHECK(r.out.find("d_max: 20\n") != std::string::npos);

    const RunResult oracle = run_cli({"oracle-mindist", path});
    CHECK(oracle.rc == 5);
    CHECK(oracle.err ==
          "error: minimum distance oracle requires enumerating 2^25 elements; the enumeration "
          "budget is 2^24 = 16777216\n");
}

TEST_CASE("encode prints packets and optionally the flag listing") {
    const std::string codefile = reference_code_file();
    const RunResult packets = run_cli({"encode", codefile, "--index", "1"});
    CHECK(packets.rc == 0);
    CHECK(packets.out ==
          "packet 1 1,1,0,1,1\n"
          "packet 2 0,1,1,0,0\n"
          "packet 3 0,0,1,1,1\n"
          "packet 4 0,0,0,1,0\n");

    const RunResult with_flags = run_cli({"encode", codefile, "--index", "1", "--flags"});
    CHECK(with_flags.rc == 0);
    CHECK(with_flags.out ==
          "packet 1 1,1,0,1,1\n"
          "packet 2 0,1,1,0,0\n"
          "packet 3 0,0,1,1,1\n"
          "packet 4 0,0,0,1,0\n"
          "\n"
          "flag v1\n"
          "GF(3)\n"
          "n=4\n"
          "component 1\n"
          "1,1,0,1,1\n"
          "component 2\n"
          "1,0,0,1,1\n"
          "0,1,1,0,0\n"
          "component 3\n"
          "1,0,0,1,1\n"
          "0,1,0,0,0\n"
          "0,0,1,1,1\n"
          "component 4\n"
          "1,0,0,0,1\n"
          "0,1,0,0,0\n"
          "0,0,1,0,1\n"
          "0,0,0,1,0\n");
}

TEST_CASE("encode rejects non-codewords unless --raw") {
    const std::string codefile = reference_code_file();
    const std::string junk = "1,0,0,0;0,0,0,0;0,0,0,0;0,0,0,0";
    const RunResult refused = run_cli({"encode", codefile, "--matrix", junk});
    CHECK(refused.rc == 3);
    CHECK(refused.err ==
          "error: input is not a codeword (nonzero syndrome); pass --raw to send it anyway\n");

    const RunResult raw = run_cli({"encode", codefile, "--matrix", junk, "--raw"});
    CHECK(raw.rc == 0);
    CHECK(raw.out.find("packet 1 1,1,0,0,0\n") == 0);

    CHECK(run_cli({"encode", codefile}).rc == 2);  // no input selector
    CHECK(run_cli({"encode", codefile, "--index", "1", "--matrix", junk}).rc == 2);
    const RunResult range = run_cli({"encode", codefile, "--index", "81"});
    CHECK(range.rc == 2);
    CHECK(range.err == "error: message index 81 out of range; the code has 3^4 codewords\n");
}

TEST_CASE("decode recovers a transmitted flag listing") {
    const std::string codefile = reference_code_file();
    const RunResult transcript = run_cli({"encode", codefile, "--index", "1", "--flags"});
    REQUIRE(transcript.rc == 0);
    const std::string flagfile = write_temp("sent.flag", transcript.out);

    const RunResult r = run_cli({"decode", codefile, "--flag-file", flagfile});
    CHECK(r.rc == 0);
    CHECK(r.out ==
          "extracted: 1,0,1,1;0,1,0,0;0,0,1,1;0,0,0,0\n"
          "decoded: 1,0,1,1;0,1,0,0;0,0,1,1;0,0,0,0\n"
          "distance: 0\n");
}

TEST_CASE("every codeword survives the encode to decode round trip") {
    const std::string codefile = reference_code_file();
    const FlagRankCode code = code_file_parse(reference_code_text);
    for (std::uint64_t index = 0; index < 81; ++index) {
        const RunResult transcript =
            run_cli({"encode", codefile, "--index", std::to_string(index), "--flags"});
        REQUIRE(transcript.rc == 0);
        const std::string flagfile = write_temp("roundtrip.flag", transcript.out);
        const RunResult r = run_cli({"decode", codefile, "--flag-file", flagfile});
        REQUIRE(r.rc == 0);

        std::vector<std::uint32_t> coeffs(4);
        std::uint64_t rest = index;
        for (std::size_t t = 0; t < 4; ++t) {
            coeffs[t] = static_cast<std::uint32_t>(rest % 3);
            rest /= 3;
        }
        const std::string expected = triangular_to_text(code.codeword(coeffs));
        CHECK(r.out == "extracted: " + expected + "\ndecoded: " + expected + "\ndistance: 0\n");
    }
}

TEST_CASE("decode corrects a low-weight perturbation") {
    const std::string codefile = reference_code_file();
    const std::string received = "2,0,1,1;0,1,0,0;0,0,1,1;0,0,0,0";
    const RunResult r = run_cli({"decode", codefile, "--matrix", received});
    CHECK(r.rc == 0);
    CHECK(r.out ==
          "extracted: 2,0,1,1;0,1,0,0;0,0,1,1;0,0,0,0\n"
          "decoded: 1,0,1,1;0,1,0,0;0,0,1,1;0,0,0,0\n"
          "distance: 1\n");

    const RunResult oracle = run_cli({"oracle-nearest", codefile, "--matrix", received});
    CHECK(oracle.rc == 0);
    CHECK(oracle.out ==
          "nearest: 1,0,1,1;0,1,0,0;0,0,1,1;0,0,0,0\n"
          "distance: 1\n");

    const RunResult mindist = run_cli({"oracle-mindist", codefile});
    CHECK(mindist.rc == 0);
    CHECK(mindist.out == "min distance: 5\n");
}

TEST_CASE("decode distinguishes cell failures from bad flags") {
    const std::string codefile = reference_code_file();

    // A valid flag outside the big cell: every component misses e_1.
    const std::string off_cell = write_temp("offcell.flag",
                                            "flag v1\nGF(3)\nn=4\n"
                                            "component 1\n0,1,0,0,0\n"
                                            "component 2\n0,1,0,0,0\n0,0,1,0,0\n"
                                            "component 3\n0,1,0,0,0\n0,0,1,0,0\n0,0,0,1,0\n"
                                            "component 4\n0,1,0,0,0\n0,0,1,0,0\n0,0,0,1,0\n"
                                            "0,0,0,0,1\n");
    const RunResult cell = run_cli({"decode", codefile, "--flag-file", off_cell});
    CHECK(cell.rc == 4);
    CHECK(cell.err == "error: flag component 1 lies outside the big cell\n");

    // Wrong component dimension.
    const std::string short_dim = write_temp("shortdim.flag",
                                             "flag v1\nGF(3)\nn=4\n"
                                             "component 1\n0,1,0,0,0\n"
                                             "component 2\n0,1,0,0,0\n0,2,0,0,0\n"
                                             "component 3\n0,1,0,0,0\n0,0,1,0,0\n0,0,0,1,0\n"
                                             "component 4\n0,1,0,0,0\n0,0,1,0,0\n0,0,0,1,0\n"
                                             "0,0,0,0,1\n");
    const RunResult dim = run_cli({"decode", codefile, "--flag-file", short_dim});
    CHECK(dim.rc == 4);
    CHECK(dim.err == "error: cell check failed: component 2 has dimension 1, expected 2\n");

    // Correct dimensions but a broken chain.
    const std::string skew = write_temp("skew.flag",
                                        "flag v1\nGF(3)\nn=4\n"
                                        "component 1\n1,0,0,0,0\n"
                                        "component 2\n0,1,0,0,0\n0,0,1,0,0\n"
                                        "component 3\n0,1,0,0,0\n0,0,1,0,0\n0,0,0,1,0\n"
                                        "component 4\n0,1,0,0,0\n0,0,1,0,0\n0,0,0,1,0\n"
                                        "0,0,0,0,1\n");
    const RunResult chain = run_cli({"decode", codefile, "--flag-file", skew});
    CHECK(chain.rc == 3);
    CHECK(chain.err == "error: components do not form a degenerate flag\n");

    // Field mismatch between flag file and code.
    const std::string wrong_field = write_temp("wrongfield.flag",
                                               "flag v1\nGF(2)\nn=4\ncomponent 1\n1,0,0,0,0\n"
                                               "component 2\n1,0,0,0,0\n0,1,0,0,0\n"
                                               "component 3\n1,0,0,0,0\n0,1,0,0,0\n0,0,1,0,0\n"
                                               "component 4\n1,0,0,0,0\n0,1,0,0,0\n0,0,1,0,0\n"
                                               "0,0,0,1,0\n");
    const RunResult mismatch = run_cli({"decode", codefile, "--flag-file", wrong_field});
    CHECK(mismatch.rc == 3);
    CHECK(mismatch.err == "error: flag file does not match the code (field or size)\n");

    CHECK(run_cli({"decode", codefile}).rc == 2);  // no input selector
    CHECK(run_cli({"decode", codefile, "--flag-file", skew, "--matrix", "0;0;0;0"}).rc == 2);
}

TEST_CASE("matrix files work as decode input") {
    const std::string codefile = reference_code_file();
    const std::string good = write_temp("recv.ut",
                                        "utmatrix v1\nGF(3)\nn=4\n2,0,1,1\n0,1,0,0\n0,0,1,1\n"
                                        "0,0,0,0\n");
    const RunResult r = run_cli({"decode", codefile, "--matrix-file", good});
    CHECK(r.rc == 0);
    CHECK(r.out.find("distance: 1\n") != std::string::npos);

    const std::string wrong = write_temp("recv2.ut", "utmatrix v1\nGF(2)\nn=4\n1\n0\n0\n0\n");
    const RunResult mismatch = run_cli({"decode", codefile, "--matrix-file", wrong});
    CHECK(mismatch.rc == 3);
    CHECK(mismatch.err == "error: matrix file does not match the code (field or size)\n");
}

TEST_CASE("malformed inputs exit with a line-numbered parse error") {
    const std::string bad = write_temp("bad.code",
                                       "flagcode v1\nGF(3)\nn=4\ndim=1\n1,x;0;0;0\n");
    const RunResult r = run_cli({"code-info", bad});
    CHECK(r.rc == 2);
    CHECK(r.err == "error: line 5: bad entry \"x\"\n");

    const RunResult missing = run_cli({"code-info", temp_path("does_not_exist.code")});
    CHECK(missing.rc == 2);
    CHECK(missing.err.find("cannot open file") != std::string::npos);
}

TEST_CASE("flag-roundtrip command") {
    const RunResult single = run_cli({"flag-roundtrip", "--q", "3", "--n", "4", "--matrix",
                                      "1,0,1,1;0,1,0,0;0,0,1,1;0,0,0,0"});
    CHECK(single.rc == 0);
    CHECK(single.out == "roundtrip ok (1 matrix)\n");

    const RunResult many =
        run_cli({"flag-roundtrip", "--q", "3", "--n", "4", "--count", "100", "--seed", "9"});
    CHECK(many.rc == 0);
    CHECK(many.out == "roundtrip ok (100 matrices)\n");

    CHECK(run_cli({"flag-roundtrip", "--q", "3", "--n", "4", "--count", "5"}).rc == 2);
    CHECK(run_cli({"flag-roundtrip", "--q", "9", "--n", "2", "--count", "10", "--seed", "1"})
              .rc == 0);
}

TEST_CASE("simulate renders a deterministic report") {
    const std::string codefile = reference_code_file();
    const std::string topofile = write_temp("line.topo",
                                            "node S source\n"
                                            "node R1 relay\n"
                                            "node R2 relay\n"
                                            "node T sink\n"
                                            "edge S R1 0 0\n"
                                            "edge R1 R2 0 0\n"
                                            "edge R2 T 0 0\n");
    const RunResult r =
        run_cli({"simulate", codefile, topofile, "--trials", "5", "--seed", "42"});
    CHECK(r.rc == 0);
    CHECK(r.out ==
          "flag transmission simulation\n"
          "code: GF(3), n=4, dim=4\n"
          "topology: nodes=4, edges=3\n"
          "seed: 42\n"
          "trials: 5\n"
          "successes: 5\n"
          "cell-failures: 0\n"
          "miscorrections: 0\n"
          "single-input relay cost per trial (multiply-adds):\n"
          "  step 1: projected=4, baseline=5\n"
          "  step 2: projected=7, baseline=10\n"
          "  step 3: projected=9, baseline=15\n"
          "  step 4: projected=10, baseline=20\n"
          "measured relay cost (multiply-adds, summed over trials):\n"
          "  node R1:\n"
          "    step 1: projected=20, baseline=25\n"
          "    step 2: projected=35, baseline=50\n"
          "    step 3: projected=45, baseline=75\n"
          "    step 4: projected=50, baseline=100\n"
          "  node R2:\n"
          "    step 1: projected=20, baseline=25\n"
          "    step 2: projected=35, baseline=50\n"
          "    step 3: projected=45, baseline=75\n"
          "    step 4: projected=50, baseline=100\n");

    // Identical invocations produce identical bytes.
    const RunResult again =
        run_cli({"simulate", codefile, topofile, "--trials", "5", "--seed", "42"});
    CHECK(again.out == r.out);
}

TEST_CASE("simulate table output and side file") {
    const std::string codefile = reference_code_file();
    const std::string topofile = write_temp("lossy.topo",
                                            "node S source\n"
                                            "node R relay\n"
                                            "node T sink\n"
                                            "edge S R 0.3 0.1\n"
                                            "edge R T 0.3 0.1\n");
    const std::string table_path = temp_path("run.tsv");
    const RunResult r = run_cli({"simulate", codefile, topofile, "--trials", "20", "--seed", "7",
                                 "--format", "table", "--table", table_path});
    CHECK(r.rc == 0);
    CHECK(r.out.find("trial\toutcome\tsent\trecovered\tops_projected\tops_baseline\n") == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 21);
    CHECK(slurp(table_path) == r.out);

    // The text report totals stay consistent on a lossy channel.
    const RunResult text = run_cli({"simulate", codefile, topofile, "--trials", "20", "--seed", "7"});
    CHECK(text.rc == 0);
    CHECK(text.out.find("trials: 20\n") != std::string::npos);

    CHECK(run_cli({"simulate", codefile, topofile, "--trials", "20"}).rc == 2);
    CHECK(run_cli({"simulate", codefile, topofile, "--trials", "20", "--seed", "7", "--format",
                   "yaml"}).rc == 2);
    CHECK(run_cli({"simulate", codefile, topofile, "--trials", "0", "--seed", "7"}).rc == 2);
}

TEST_CASE("usage errors and help") {
    CHECK(run_cli({}).rc == 2);
    CHECK(run_cli({"bogus-command"}).rc == 2);
    CHECK(run_cli({"gen-code", "--wat"}).rc == 2);

    const RunResult help = run_cli({"--help"});
    CHECK(help.rc == 0);
    CHECK(help.out.find("flagnet") != std::string::npos);

    const RunResult sub_help = run_cli({"encode", "--help"});
    CHECK(sub_help.rc == 0);
    CHECK(sub_help.out.find("--raw") != std::string::npos);
}
