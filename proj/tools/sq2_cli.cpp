#include "sq2/descriptors.hpp"
#include "sq2/invariants.hpp"
#include "sq2/modfile.hpp"
#include "sq2/module.hpp"
#include "sq2/report_json.hpp"
#include "sq2/stable.hpp"
#include "sq2/verify.hpp"
#include "sq2/version.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw sq2::Error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& outPath)
{
    if (outPath.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(outPath, std::ios::binary);
    if (!out)
        throw sq2::Error("cannot write file: " + outPath);
    out << text;
}

sq2::GradedModule load_module(const std::string& path)
{
    return sq2::read_module(read_file(path));
}

/* Parses a Milnor element into an algebra's coordinates. */
sq2::Gf2Vec elem_in(const sq2::MilnorAlgebraPtr& alg, const std::string& text)
{
    auto v = alg->elem(sq2::parse_element(text));
    if (!v)
        throw sq2::Error("element '" + text + "' is not in " + alg->descriptor());
    return *v;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{ "Milnor-basis arithmetic in the mod 2 Steenrod algebra, finite sub-Hopf "
                  "algebras, graded modules, and the stable Picard toolkit" };
    app.set_version_flag("--version", std::string(sq2::kVersion));
    app.require_subcommand(1);

    std::string lhs, rhs, desc, file, file2, outPath;
    int shiftM = 0, powerL = 0;
    int maxDim = sq2::kDefaultDimCap;

    auto* mul = app.add_subcommand("mul", "Multiply two Milnor elements");
    mul->add_option("lhs", lhs, "left factor, e.g. \"Sq(2)\"")->required();
    mul->add_option("rhs", rhs, "right factor")->required();

    auto* comul = app.add_subcommand("comul", "Coproduct of a Milnor element");
    comul->add_option("elem", lhs)->required();

    auto* antip = app.add_subcommand("antipode", "Antipode of a Milnor element");
    antip->add_option("elem", lhs)->required();

    auto* algebra = app.add_subcommand("algebra", "Inspect a finite sub-Hopf algebra");
    algebra->require_subcommand(1);
    auto* algInfo = algebra->add_subcommand("info", "Dimension, top degree, top class");
    algInfo->add_option("descriptor", desc)->required();
    auto* algBasis = algebra->add_subcommand("basis", "List the Milnor basis");
    algBasis->add_option("descriptor", desc)->required();
    auto* algTop = algebra->add_subcommand("topclass", "Print the top class");
    algTop->add_option("descriptor", desc)->required();

    auto* module = app.add_subcommand("module", "Operations on graded module files");
    module->require_subcommand(1);
    auto addOut = [&](CLI::App* cmd) { cmd->add_option("-o,--out", outPath, "output file"); };
    auto* mValidate = module->add_subcommand("validate", "Validate and re-emit canonically");
    mValidate->add_option("file", file)->required();
    addOut(mValidate);
    auto* mTensor = module->add_subcommand("tensor", "Tensor product of two modules");
    mTensor->add_option("file", file)->required();
    mTensor->add_option("file2", file2)->required();
    addOut(mTensor);
    auto* mDual = module->add_subcommand("dual", "Dual module");
    mDual->add_option("file", file)->required();
    addOut(mDual);
    auto* mRestrict = module->add_subcommand("restrict", "Restrict to a subalgebra");
    mRestrict->add_option("file", file)->required();
    mRestrict->add_option("subalgebra", desc, "subalgebra descriptor")->required();
    addOut(mRestrict);
    auto* mInv = module->add_subcommand("invariants", "Invariant submodule M^Z over H//Z");
    mInv->add_option("file", file)->required();
    mInv->add_option("subalgebra", desc, "normal subalgebra descriptor")->required();
    addOut(mInv);
    auto* mOmega = module->add_subcommand("omega", "Loop functor (minimal representative)");
    mOmega->add_option("file", file)->required();
    mOmega->add_option("--power", powerL, "omega power (may be negative)")->default_val(1);
    mOmega->add_option("--max-dim", maxDim, "intermediate dimension cap");
    addOut(mOmega);
    auto* mMinrep = module->add_subcommand("minrep", "Strip free summands");
    mMinrep->add_option("file", file)->required();
    addOut(mMinrep);
    auto* mIsFree = module->add_subcommand("isfree", "Freeness via the top class");
    mIsFree->add_option("file", file)->required();
    auto* mEndo = module->add_subcommand("endotrivial", "Endotriviality of a module");
    mEndo->add_option("file", file)->required();
    mEndo->add_option("--max-dim", maxDim, "intermediate dimension cap");

    auto* picard = app.add_subcommand("picard", "Minimal representative of sigma(m) Omega^l (k)");
    picard->add_option("algebra", desc)->required();
    picard->add_option("--m", shiftM, "shift")->required();
    picard->add_option("--l", powerL, "omega power")->required();
    picard->add_option("--max-dim", maxDim, "intermediate dimension cap");
    addOut(picard);

    std::string kind;
    std::optional<int> jobN, jobI;
    std::uint64_t seed = 0;
    double timeCap = 0;
    bool asJson = false;
    auto* verify = app.add_subcommand("verify", "Run a batch verification job");
    verify->add_option("kind", kind,
                       "one of: lemma-2.9 corollary-2.16 lagrange doubling poincare "
                       "prop-4.1 prop-4.2 prop-4.5 prop-4.6 prop-4.7 "
                       "picard-generators detection-corpus")
        ->required();
    verify->add_option("--n", jobN, "family parameter n");
    verify->add_option("--i", jobI, "family index i");
    verify->add_option("--seed", seed, "seed for randomized checks");
    verify->add_option("--max-dim", maxDim, "dimension cap for module computations");
    verify->add_option("--time-cap-sec", timeCap, "skip remaining checks past this time");
    verify->add_flag("--json", asJson, "machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) // --help, --version
            return app.exit(e);
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (mul->parsed()) {
            std::cout << sq2::format_element(
                             sq2::milnor_mul(sq2::parse_element(lhs), sq2::parse_element(rhs)))
                      << "\n";
            return kExitPass;
        }
        if (comul->parsed()) {
            sq2::MilnorElement x = sq2::parse_element(lhs);
            std::string out;
            for (const auto& m : x)
                for (const auto& [u, v] : sq2::milnor_coproduct(m)) {
                    if (!out.empty())
                        out += " + ";
                    out += u.label() + " (x) " + v.label();
                }
            std::cout << (out.empty() ? "0" : out) << "\n";
            return kExitPass;
        }
        if (antip->parsed()) {
            std::cout << sq2::format_element(sq2::milnor_antipode(sq2::parse_element(lhs)))
                      << "\n";
            return kExitPass;
        }

        if (algInfo->parsed() || algBasis->parsed() || algTop->parsed()) {
            if (desc.rfind("quotient:", 0) != 0) {
                sq2::Profile p = sq2::profile_from_descriptor(desc);
                if (!p.finite()) {
                    if (!algInfo->parsed())
                        throw sq2::Error("algebra '" + desc + "' is infinite");
                    std::cout << "descriptor: " << desc << "\n"
                              << "profile: " << p.label() << "\n"
                              << "dimension: infinite\n";
                    return kExitPass;
                }
            }
            sq2::AlgebraPtr A = sq2::resolve_algebra(desc);
            if (algInfo->parsed()) {
                std::cout << "descriptor: " << A->descriptor() << "\n";
                if (auto* m = dynamic_cast<const sq2::MilnorAlgebra*>(A.get()))
                    std::cout << "profile: " << m->profile().label() << "\n";
                std::cout << "dimension: " << A->dim() << "\n"
                          << "top degree: " << A->top_degree() << "\n"
                          << "top class: " << A->label(A->top_class()) << "\n";
                std::cout << "generators:";
                for (const auto& g : A->generator_labels())
                    std::cout << " " << g;
                std::cout << "\n";
            } else if (algBasis->parsed()) {
                for (int i = 0; i < A->dim(); ++i)
                    std::cout << i << " " << A->degree(i) << " " << A->label(i) << "\n";
            } else {
                std::cout << A->label(A->top_class()) << "\n";
            }
            return kExitPass;
        }

        if (mValidate->parsed()) {
            sq2::GradedModule M = load_module(file);
            sq2::ValidationReport r = sq2::validate_module(M, seed);
            if (!r.ok) {
                std::cerr << "invalid module: " << r.message << " (mode " << r.mode << ")\n";
                return kExitFail;
            }
            std::cerr << "valid (" << r.mode << ", " << r.checked << " checks, seed "
                      << r.seed << ")\n";
            emit(sq2::write_module(M), outPath);
            return kExitPass;
        }
        if (mTensor->parsed()) {
            emit(sq2::write_module(sq2::tensor(load_module(file), load_module(file2))), outPath);
            return kExitPass;
        }
        if (mDual->parsed()) {
            emit(sq2::write_module(sq2::dual(load_module(file))), outPath);
            return kExitPass;
        }
        if (mRestrict->parsed()) {
            sq2::GradedModule M = load_module(file);
            auto amb = std::dynamic_pointer_cast<const sq2::MilnorAlgebra>(M.algebra());
            if (!amb)
                throw sq2::Error("restrict needs a Milnor-basis ambient algebra");
            auto sub = sq2::resolve_milnor(desc);
            emit(sq2::write_module(sq2::restrict_module(M, sq2::milnor_embedding(sub, amb))),
                 outPath);
            return kExitPass;
        }
        if (mInv->parsed()) {
            sq2::GradedModule M = load_module(file);
            auto amb = std::dynamic_pointer_cast<const sq2::MilnorAlgebra>(M.algebra());
            if (!amb)
                throw sq2::Error("invariants needs a Milnor-basis ambient algebra");
            auto sub = sq2::resolve_milnor(desc);
            auto Q = sq2::make_quotient(amb, sq2::milnor_embedding(sub, amb));
            emit(sq2::write_module(sq2::invariant_module(M, Q).mod), outPath);
            return kExitPass;
        }
        if (mOmega->parsed()) {
            emit(sq2::write_module(sq2::omega_power(load_module(file), powerL, maxDim)),
                 outPath);
            return kExitPass;
        }
        if (mMinrep->parsed()) {
            emit(sq2::write_module(sq2::minimal_representative(load_module(file))), outPath);
            return kExitPass;
        }
        if (mIsFree->parsed()) {
            std::cout << (sq2::is_free(load_module(file)) ? "free" : "not free") << "\n";
            return kExitPass;
        }
        if (mEndo->parsed()) {
            std::cout << (sq2::is_endotrivial(load_module(file), maxDim) ? "endotrivial"
                                                                         : "not endotrivial")
                      << "\n";
            return kExitPass;
        }

        if (picard->parsed()) {
            sq2::StableClass c =
                sq2::picard_element(sq2::resolve_algebra(desc), shiftM, powerL, maxDim);
            emit(sq2::write_stable_class(c), outPath);
            return kExitPass;
        }

        if (verify->parsed()) {
            sq2::JobParams p;
            p.kind = kind;
            p.n = jobN;
            p.i = jobI;
            p.seed = seed;
            p.maxDim = maxDim;
            p.timeCapSec = timeCap;
            sq2::Report rep = sq2::run_job(p);
            std::string rendered =
                asJson ? sq2::report_to_json(rep).dump(2) + "\n" : rep.to_text();
            std::cout << rendered;
            if (const char* cache = std::getenv("SQ2_CACHE_DIR")) {
                std::string name = std::string(cache) + "/" + rep.job;
                for (const auto& [k, v] : rep.params)
                    name += "-" + k + v;
                name += "-seed" + std::to_string(rep.seed) + ".report.json";
                std::ofstream out(name, std::ios::binary);
                if (out)
                    out << sq2::report_to_json(rep).dump(2) << "\n";
            }
            return rep.passed() ? kExitPass : kExitFail;
        }
    } catch (const sq2::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitFail;
    } catch (const sq2::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
