// End-to-end CLI flows run against the installed binary: ingest ->
// featurize -> train -> bench/explain -> report, plus exit-code contracts.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string g_cli, g_root, g_work;
int g_failures = 0;

void check(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

int run(const std::string& args) {
    const std::string cmd = "cd " + g_root + " && " + g_cli + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--cli") g_cli = argv[i + 1];
        else if (flag == "--root") g_root = argv[i + 1];
        else if (flag == "--work-dir") g_work = argv[i + 1];
    }
    if (g_work.empty()) g_work = "cli_smoke_work";
    fs::remove_all(g_work);
    fs::create_directories(g_work);
    const std::string work = fs::absolute(g_work).string();

    check(run("--help") == 0, "--help exits 0");
    check(run("definitely-not-a-command") != 0, "unknown subcommand is an error");

    // ingest
    const std::string cleaned = work + "/cleaned.csv";
    check(run("ingest --input data/demo_reviews.csv --output " + cleaned + " --report " + work +
              "/ingest.txt") == 0,
          "ingest runs");
    check(fs::exists(cleaned), "ingest writes the cleaned csv");
    check(slurp(work + "/ingest.txt").find("row_ledger") != std::string::npos,
          "ingest report carries the row ledger");
    check(run("ingest --input no_such_file.csv --output " + work + "/x.csv") == 1,
          "missing input is a config error (exit 1)");

    // featurize + assembled matrix
    const std::string featurized = work + "/featurized.csv";
    const std::string matrix = work + "/features.csv";
    check(run("featurize --input " + cleaned + " --output " + featurized +
              " --lexicon data/lexicon/demo_emotions.tsv --matrix-out " + matrix) == 0,
          "featurize runs");
    {
        std::string head;
        std::ifstream in(featurized);
        std::getline(in, head);
        check(head.find(",anger,") != std::string::npos && head.rfind(",positive") != std::string::npos,
              "featurize appends the ten sentiment columns");
    }
    check(slurp(matrix).find("__target__") != std::string::npos, "matrix csv carries __target__");
    check(run("featurize --input " + cleaned + " --output " + featurized +
              " --lexicon data/lexicon/missing.tsv") == 1,
          "missing lexicon fails before any compute (exit 1)");

    // train + explain + bench
    const std::string model = work + "/model.bin";
    check(run("train --algo rf --task regression --features " + matrix + " --seed 42 --out " + model +
              " --config data/demo.cfg") == 0,
          "train runs");
    check(fs::exists(model), "train writes the model file");

    check(run("explain --model " + model + " --features " + matrix +
              " --method importance --out-dir " + work + "/explain") == 0,
          "explain importance runs");
    check(fs::exists(work + "/explain/explain_importance.txt"), "importance report exists");
    check(run("explain --model " + model + " --features " + matrix +
              " --method breakdown --out-dir " + work + "/explain") == 0,
          "explain breakdown runs");
    check(fs::exists(work + "/explain/explain_breakdown_mean.svg"), "mean waterfall exists");
    {
        // instances file without a __target__ column: first two feature rows
        std::ifstream in(matrix);
        std::string header, r1, r2;
        std::getline(in, header);
        std::getline(in, r1);
        std::getline(in, r2);
        auto cut = [&](const std::string& line) { return line.substr(0, line.rfind(',')); };
        std::ofstream out(work + "/instances.csv");
        out << cut(header) << "\n" << cut(r1) << "\n" << cut(r2) << "\n";
    }
    check(run("explain --model " + model + " --features " + matrix + " --instances " + work +
              "/instances.csv --method breakdown --out-dir " + work + "/explain2") == 0,
          "explain breakdown accepts a target-less instances csv");
    check(fs::exists(work + "/explain2/explain_breakdown_instance_1.svg") &&
              !fs::exists(work + "/explain2/explain_breakdown_instance_2.svg"),
          "breakdown explains exactly the supplied instances");
    check(run("explain --model " + model + " --features " + matrix + " --method pdp --out-dir " +
              work + "/explain --expected-signs data/signs/default_signs.cfg") == 0,
          "explain pdp runs");
    check(run("explain --model " + model + " --features " + matrix + " --method sorcery") == 1,
          "unknown explain method exits 1");

    check(run("bench --task regression --features " + matrix +
              " --algos cart,knn --folds 2 --out-dir " + work + "/bench --config data/demo.cfg") == 0,
          "bench runs");
    check(fs::exists(work + "/bench/bench_regression.txt"), "bench report exists");
    check(run("report --from " + work + "/bench/bench_regression.txt --out " + work +
              "/bench/rerendered.svg") == 0,
          "report re-renders the chart");
    check(slurp(work + "/bench/rerendered.svg").find("<svg") != std::string::npos,
          "re-rendered svg is svg");

    // classification path rejects fractional targets (exit 4)
    {
        std::ofstream bad(work + "/bad.csv");
        bad << "x0,__target__\n0,1\n1,2.5\n";
    }
    check(run("bench --task classification --features " + work + "/bad.csv") == 4,
          "non-integer classification target exits 4");

    // imbalanced fixture whose stratified test split carries a 64.4% majority
    {
        std::ofstream imb(work + "/imbalanced.csv");
        imb << "x0,x1,__target__\n";
        const int counts[5] = {180, 250, 450, 900, 3220};  // classes 1..5
        unsigned state = 12345;
        auto next = [&state]() {
            state = state * 1103515245u + 12345u;
            return static_cast<double>((state >> 16) & 0x7fff) / 32768.0;
        };
        for (int cls = 1; cls <= 5; ++cls)
            for (int i = 0; i < counts[cls - 1]; ++i)
                imb << next() << "," << next() << "," << cls << "\n";
    }
    check(run("bench --task classification --features " + work + "/imbalanced.csv --algos cart "
              "--folds 2 --out-dir " + work + "/imb") == 0,
          "imbalanced classification bench runs");
    check(slurp(work + "/imb/bench_classification.txt").find("no_information_rate = 0.6440") !=
              std::string::npos,
          "NIR printed as 0.644 on the 64.4%-majority fixture");

    // study3 reports are byte-stable under --fixed-epoch
    check(run("study3 --config data/demo.cfg --out-dir " + work + "/study3a --fixed-epoch") == 0 &&
              run("study3 --config data/demo.cfg --out-dir " + work + "/study3b --fixed-epoch") == 0,
          "study3 runs twice");
    check(slurp(work + "/study3a/study3_benchmark.txt") ==
                  slurp(work + "/study3b/study3_benchmark.txt") &&
              slurp(work + "/study3a/study3_benchmark.svg") ==
                  slurp(work + "/study3b/study3_benchmark.svg"),
          "study3 reports are byte-identical across runs");

    // study1: one benchmark row per configured algorithm (7 in the demo config)
    check(run("study1 --config data/demo.cfg --out-dir " + work + "/study1 --fixed-epoch") == 0,
          "study1 runs");
    {
        std::istringstream in(slurp(work + "/study1/study1_benchmark.txt"));
        std::string line;
        bool in_table = false;
        int rows = 0;
        while (std::getline(in, line)) {
            if (line.rfind("[table benchmark]", 0) == 0) in_table = true;
            else if (line.rfind("[/table]", 0) == 0) in_table = false;
            else if (in_table && line.find(" | ") != std::string::npos) ++rows;
        }
        check(rows == 1 + 7, "study1 table has one row of header plus seven algorithms");
    }

    // study2 end to end on the demo corpus
    check(run("study2 --config data/demo.cfg --out-dir " + work + "/study2 --fixed-epoch") == 0,
          "study2 runs");
    check(fs::exists(work + "/study2/study2_breakdown_mean.svg"), "study2 waterfall exists");
    check(fs::exists(work + "/study2/study2_pdp.txt"), "study2 pdp report exists");
    check(run("study2 --config data/demo.cfg --out-dir " + work + "/study2b --instances 1") == 0,
          "study2 with a single instance runs");
    check(fs::exists(work + "/study2b/study2_breakdown_instance_0.svg") &&
              !fs::exists(work + "/study2b/study2_breakdown_instance_1.svg"),
          "single-instance study2 emits exactly one waterfall");

    std::printf("%d failure(s)\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
