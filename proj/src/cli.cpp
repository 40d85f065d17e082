#include "flagnet/cli.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "flagnet/codes.hpp"
#include "flagnet/errors.hpp"
#include "flagnet/field.hpp"
#include "flagnet/flags.hpp"
#include "flagnet/netsim.hpp"
#include "flagnet/rng.hpp"
#include "flagnet/textio.hpp"

namespace flagnet::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write file \"" + path + "\"");
    out << content;
}

/// Factors q into (p, m) with p prime; rejects q that is not a prime power.
std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q) {
    if (q < 2) throw DomainError("field size must be at least 2");
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    std::uint32_t m = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++m;
    }
    if (rest != 1)
        throw DomainError("field size " + std::to_string(q) + " is not a prime power");
    return {static_cast<std::uint32_t>(p), m};
}

Field field_from_q(std::uint64_t q) {
    const auto [p, m] = factor_prime_power(q);
    return m == 1 ? Field::gf(p) : Field::gf(p, m);
}

/// Reference 4-dimensional code over GF(3) at n = 4; its minimum
/// distance is 5.
FlagRankCode reference_code_t() {
    const Field f3 = Field::gf(3);
    std::vector<UpperTriangular> basis;
    basis.emplace_back(f3, 4, std::vector<std::uint32_t>{1, 0, 1, 1, 1, 0, 0, 1, 1, 0});
    basis.emplace_back(f3, 4, std::vector<std::uint32_t>{0, 2, 1, 0, 2, 2, 0, 1, 0, 1});
    basis.emplace_back(f3, 4, std::vector<std::uint32_t>{0, 0, 1, 0, 0, 0, 1, 0, 0, 0});
    basis.emplace_back(f3, 4, std::vector<std::uint32_t>{0, 0, 0, 1, 0, 2, 0, 0, 0, 0});
    return FlagRankCode(f3, 4, std::move(basis));
}

std::string csv(const std::vector<std::uint32_t>& codes) {
    std::ostringstream out;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (i) out << ',';
        out << codes[i];
    }
    return out.str();
}

UpperTriangular random_triangular(const Field& field, std::size_t n, Rng& rng) {
    std::vector<std::uint32_t> packed(n * (n + 1) / 2);
    for (std::uint32_t& code : packed) code = rng.below(field.order());
    return UpperTriangular(field, n, std::move(packed));
}

/// The codeword whose coefficient tuple is the base-q expansion of
/// index (least significant digit first). Rejects index >= q^dim.
UpperTriangular codeword_at(const FlagRankCode& code, std::uint64_t index) {
    std::vector<std::uint32_t> coeffs(code.dim());
    std::uint64_t rest = index;
    for (std::size_t t = 0; t < code.dim(); ++t) {
        coeffs[t] = static_cast<std::uint32_t>(rest % code.field().order());
        rest /= code.field().order();
    }
    if (rest != 0)
        throw DomainError("message index " + std::to_string(index) +
                          " out of range; the code has " + std::to_string(code.field().order()) +
                          "^" + std::to_string(code.dim()) + " codewords");
    return code.codeword(coeffs);
}

struct MatrixArg {
    std::string text;
    std::string file;
    CLI::Option* text_opt = nullptr;
    CLI::Option* file_opt = nullptr;

    void attach(CLI::App* cmd, const std::string& what) {
        text_opt = cmd->add_option("--matrix", text,
                                   "the " + what + " in row text form (rows ';', entries ',')");
        file_opt = cmd->add_option("--matrix-file", file,
                                   "file holding the " + what + " (\"utmatrix v1\" format)");
    }

    bool given() const { return text_opt->count() + file_opt->count() > 0; }

    UpperTriangular load(const FlagRankCode& code) const {
        if (text_opt->count() + file_opt->count() != 1)
            throw DomainError("give exactly one of --matrix and --matrix-file");
        if (text_opt->count()) return triangular_from_text(text, code.field(), code.n());
        const UpperTriangular m = triangular_file_parse(read_file(file));
        if (m.field() != code.field() || m.n() != code.n())
            throw ValidationError("matrix file does not match the code (field or size)");
        return m;
    }
};

int cmd_gen_code(std::uint64_t q, std::uint64_t n, const std::string& kind, std::uint64_t dim,
                 std::uint64_t seed, bool have_dim, bool have_seed, const std::string& out_path,
                 std::ostream& out) {
    if (n == 0) throw DomainError("n must be positive");
    if (kind != "random") {
        if (have_dim) throw DomainError("--dim only applies to --kind random");
        if (have_seed) throw DomainError("--seed only applies to --kind random");
    }

    FlagRankCode code = [&] {
        if (kind == "max-distance") return build_max_distance_code(field_from_q(q), n);
        if (kind == "example-T") {
            if (q != 3 || n != 4) throw DomainError("--kind example-T requires --q 3 --n 4");
            return reference_code_t();
        }
        if (!have_dim) throw DomainError("--kind random requires --dim");
        if (dim == 0) throw DomainError("--dim must be positive");
        if (!have_seed) throw DomainError("--kind random requires --seed");
        return random_code(field_from_q(q), n, dim, seed);
    }();

    const std::string text = code_file_text(code);
    if (out_path.empty()) {
        out << text;
    } else {
        write_file(out_path, text);
    }
    return 0;
}

int cmd_code_info(const std::string& codefile, std::ostream& out) {
    const FlagRankCode code = code_file_parse(read_file(codefile));
    out << "field: " << code.field().to_string() << "\n";
    out << "n: " << code.n() << "\n";
    out << "dim: " << code.dim() << "\n";
    if (code.dim() == 0) {
        out << "min distance: undefined (zero code)\n";
    } else {
        try {
            const std::size_t d = code.min_distance();
            out << "min distance: " << d << "\n";
        } catch (const ResourceError& e) {
            out << "min distance: skipped (" << e.what() << ")\n";
        }
    }
    out << "dual dim: " << dual_code(code).dim() << "\n";
    out << "d_max: " << d_max(code.n() + 1) << "\n";
    return 0;
}

int cmd_encode(const std::string& codefile, const MatrixArg& matrix, std::uint64_t index,
               bool have_index, bool raw, bool flags, std::ostream& out) {
    const FlagRankCode code = code_file_parse(read_file(codefile));
    if (static_cast<int>(have_index) + static_cast<int>(matrix.given()) != 1)
        throw DomainError("give exactly one of --index, --matrix, --matrix-file");

    const UpperTriangular a = have_index ? codeword_at(code, index) : matrix.load(code);
    if (!raw && !code.contains(a))
        throw ValidationError("input is not a codeword (nonzero syndrome); pass --raw to send it anyway");

    for (const Packet& p : source_emit(a)) out << "packet " << p.seq << " " << csv(p.payload.codes()) << "\n";
    if (flags) {
        out << "\n" << flag_file_text(flag_from_matrix(a));
    }
    return 0;
}

int cmd_decode(const std::string& codefile, const MatrixArg& matrix,
               const std::string& flag_path, bool have_flag, std::ostream& out) {
    const FlagRankCode code = code_file_parse(read_file(codefile));
    if (static_cast<int>(have_flag) + static_cast<int>(matrix.given()) != 1)
        throw DomainError("give exactly one of --flag-file, --matrix, --matrix-file");

    UpperTriangular extracted = [&] {
        if (!have_flag) return matrix.load(code);
        const ParsedFlag parsed = flag_file_parse(read_file(flag_path));
        if (parsed.field != code.field() || parsed.n != code.n())
            throw ValidationError("flag file does not match the code (field or size)");
        for (std::size_t i = 0; i < parsed.components.size(); ++i) {
            if (parsed.components[i].dim() != i + 1)
                throw CellError("cell check failed: component " + std::to_string(i + 1) +
                                " has dimension " + std::to_string(parsed.components[i].dim()) +
                                ", expected " + std::to_string(i + 1));
        }
        return matrix_from_flag(DegenerateFlag(parsed.components));
    }();

    const SyndromeTable table(code);
    const UpperTriangular decoded = table.decode(extracted);
    out << "extracted: " << triangular_to_text(extracted) << "\n";
    out << "decoded: " << triangular_to_text(decoded) << "\n";
    out << "distance: " << flag_rank(extracted - decoded) << "\n";
    return 0;
}

int cmd_oracle_mindist(const std::string& codefile, std::ostream& out) {
    const FlagRankCode code = code_file_parse(read_file(codefile));
    if (code.dim() == 0) throw DomainError("the zero code has no minimum distance");

    const std::uint32_t q = code.field().order();
    std::uint64_t count = 1;
    for (std::size_t t = 0; t < code.dim(); ++t) {
        count *= q;
        if (count > enumeration_budget)
            throw ResourceError("minimum distance oracle requires enumerating " +
                                std::to_string(q) + "^" + std::to_string(code.dim()) +
                                " elements; the enumeration budget is 2^24 = " +
                                std::to_string(enumeration_budget));
    }

    // Independent of the cached scan in min_distance: a plain odometer
    // over all nonzero coefficient tuples.
    std::size_t best = 0;
    bool first = true;
    std::vector<std::uint32_t> coeffs(code.dim(), 0);
    for (std::uint64_t index = 1; index < count; ++index) {
        std::size_t t = 0;
        while (coeffs[t] + 1 == q) coeffs[t++] = 0;
        ++coeffs[t];
        const std::size_t w = flag_rank(code.codeword(coeffs));
        if (first || w < best) {
            best = w;
            first = false;
        }
    }
    out << "min distance: " << best << "\n";
    return 0;
}

int cmd_oracle_nearest(const std::string& codefile, const MatrixArg& matrix, std::ostream& out) {
    const FlagRankCode code = code_file_parse(read_file(codefile));
    const UpperTriangular a = matrix.load(code);
    const NearestResult result = exhaustive_nearest(code, a);
    out << "nearest: " << triangular_to_text(result.codeword) << "\n";
    out << "distance: " << result.distance << "\n";
    return 0;
}

int cmd_flag_roundtrip(std::uint64_t q, std::uint64_t n, const std::string& matrix_text,
                       bool have_matrix, std::uint64_t count, std::uint64_t seed, bool have_seed,
                       std::ostream& out) {
    if (n == 0) throw DomainError("n must be positive");
    const Field field = field_from_q(q);

    std::vector<UpperTriangular> inputs;
    if (have_matrix) {
        inputs.push_back(triangular_from_text(matrix_text, field, n));
    } else {
        if (count == 0) throw DomainError("--count must be positive");
        if (!have_seed) throw DomainError("random matrices require --seed");
        Rng rng(seed);
        for (std::uint64_t i = 0; i < count; ++i) inputs.push_back(random_triangular(field, n, rng));
    }

    for (const UpperTriangular& a : inputs) {
        const UpperTriangular back = matrix_from_flag(flag_from_matrix(a));
        if (back != a) {
            out << "roundtrip failed\n";
            out << "input: " << triangular_to_text(a) << "\n";
            out << "returned: " << triangular_to_text(back) << "\n";
            return 1;
        }
    }
    out << "roundtrip ok (" << inputs.size() << (inputs.size() == 1 ? " matrix" : " matrices")
        << ")\n";
    return 0;
}

int cmd_simulate(const std::string& codefile, const std::string& topofile, std::uint64_t trials,
                 std::uint64_t seed, const std::string& format, const std::string& table_path,
                 std::ostream& out) {
    if (trials == 0) throw DomainError("--trials must be positive");
    const FlagRankCode code = code_file_parse(read_file(codefile));
    const Topology topology = topology_file_parse(read_file(topofile));

    const Simulator simulator(topology, code);
    const SimReport report = simulator.run_campaign(trials, seed);

    out << (format == "table" ? report.to_table() : report.to_text());
    if (!table_path.empty()) write_file(table_path, report.to_table());
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"flag rank metric codes: generation, coding, and network simulation", "flagnet"};
    app.require_subcommand(1);

    // gen-code
    std::uint64_t gen_q = 0, gen_n = 0, gen_dim = 0, gen_seed = 0;
    std::string gen_kind, gen_out;
    CLI::App* gen = app.add_subcommand("gen-code", "generate a code file");
    gen->add_option("--q", gen_q, "field size (prime power)")->required();
    gen->add_option("--n", gen_n, "matrix size n")->required();
    gen->add_option("--kind", gen_kind, "construction")
        ->required()
        ->check(CLI::IsMember({"max-distance", "example-T", "random"}));
    CLI::Option* gen_dim_opt = gen->add_option("--dim", gen_dim, "dimension (random kind)");
    CLI::Option* gen_seed_opt = gen->add_option("--seed", gen_seed, "seed (random kind)");
    gen->add_option("--out", gen_out, "output file (default: stdout)");

    // code-info
    std::string info_codefile;
    CLI::App* info = app.add_subcommand("code-info", "print code parameters");
    info->add_option("codefile", info_codefile, "code file")->required();

    // encode
    std::string enc_codefile;
    std::uint64_t enc_index = 0;
    bool enc_raw = false, enc_flags = false;
    MatrixArg enc_matrix;
    CLI::App* enc = app.add_subcommand("encode", "emit the packets of a codeword");
    enc->add_option("codefile", enc_codefile, "code file")->required();
    CLI::Option* enc_index_opt =
        enc->add_option("--index", enc_index, "codeword by message index (base-q digits)");
    enc_matrix.attach(enc, "matrix to send");
    enc->add_flag("--raw", enc_raw, "skip the codeword membership check");
    enc->add_flag("--flags", enc_flags, "also print the flag subspace bases");

    // decode
    std::string dec_codefile, dec_flagfile;
    MatrixArg dec_matrix;
    CLI::App* dec = app.add_subcommand("decode", "decode a received matrix or flag");
    dec->add_option("codefile", dec_codefile, "code file")->required();
    dec_matrix.attach(dec, "received matrix");
    CLI::Option* dec_flag_opt =
        dec->add_option("--flag-file", dec_flagfile, "received flag listing (\"flag v1\" format)");

    // oracle-mindist
    std::string omd_codefile;
    CLI::App* omd = app.add_subcommand("oracle-mindist", "exhaustive minimum distance");
    omd->add_option("codefile", omd_codefile, "code file")->required();

    // oracle-nearest
    std::string onr_codefile;
    MatrixArg onr_matrix;
    CLI::App* onr = app.add_subcommand("oracle-nearest", "exhaustive nearest codeword");
    onr->add_option("codefile", onr_codefile, "code file")->required();
    onr_matrix.attach(onr, "matrix to decode");

    // flag-roundtrip
    std::uint64_t frt_q = 0, frt_n = 0, frt_count = 1, frt_seed = 0;
    std::string frt_matrix;
    CLI::App* frt = app.add_subcommand("flag-roundtrip",
                                       "check matrix -> flag -> matrix round trips");
    frt->add_option("--q", frt_q, "field size (prime power)")->required();
    frt->add_option("--n", frt_n, "matrix size n")->required();
    CLI::Option* frt_matrix_opt = frt->add_option("--matrix", frt_matrix, "one matrix to check");
    frt->add_option("--count", frt_count, "number of random matrices (default 1)");
    CLI::Option* frt_seed_opt = frt->add_option("--seed", frt_seed, "seed for random matrices");

    // simulate
    std::string sim_codefile, sim_topofile, sim_format = "text", sim_table;
    std::uint64_t sim_trials = 0, sim_seed = 0;
    CLI::App* sim = app.add_subcommand("simulate", "run a transmission campaign");
    sim->add_option("codefile", sim_codefile, "code file")->required();
    sim->add_option("topofile", sim_topofile, "topology file")->required();
    sim->add_option("--trials", sim_trials, "number of transmissions")->required();
    sim->add_option("--seed", sim_seed, "campaign seed (runs are reproducible)")->required();
    sim->add_option("--format", sim_format, "stdout format")
        ->check(CLI::IsMember({"text", "table"}));
    sim->add_option("--table", sim_table, "also write the per-trial table to this file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*gen)
            return cmd_gen_code(gen_q, gen_n, gen_kind, gen_dim, gen_seed,
                                gen_dim_opt->count() > 0, gen_seed_opt->count() > 0, gen_out, out);
        if (*info) return cmd_code_info(info_codefile, out);
        if (*enc)
            return cmd_encode(enc_codefile, enc_matrix, enc_index, enc_index_opt->count() > 0,
                              enc_raw, enc_flags, out);
        if (*dec)
            return cmd_decode(dec_codefile, dec_matrix, dec_flagfile, dec_flag_opt->count() > 0,
                              out);
        if (*omd) return cmd_oracle_mindist(omd_codefile, out);
        if (*onr) return cmd_oracle_nearest(onr_codefile, onr_matrix, out);
        if (*frt)
            return cmd_flag_roundtrip(frt_q, frt_n, frt_matrix, frt_matrix_opt->count() > 0,
                                      frt_count, frt_seed, frt_seed_opt->count() > 0, out);
        if (*sim)
            return cmd_simulate(sim_codefile, sim_topofile, sim_trials, sim_seed, sim_format,
                                sim_table, out);
        err << "error: no command given\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        return 5;
    } catch (const CellError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace flagnet::cli
