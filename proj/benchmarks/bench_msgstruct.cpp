#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "msgstruct/canonical.hpp"
#include "msgstruct/derive.hpp"
#include "msgstruct/lint.hpp"
#include "msgstruct/parser.hpp"
#include "msgstruct/printer.hpp"
#include "msgstruct/uifrag.hpp"

namespace {

std::string order_text() {
    std::ifstream in(std::string(MSGSTRUCT_FIXTURE_DIR) + "/order.ms");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ORDER with its line iteration repeated `copies` times under fresh names.
std::string wide_order(int copies) {
    std::string text = "ORDER=<Order number (op=g; domain=number)+Client (op=i; domain=ref:Client)";
    for (int i = 0; i < copies; ++i) {
        auto n = std::to_string(i);
        text += "+LINES " + n + "={LINE " + n + "=<Product " + n + " (op=i; domain=ref:Product)+Price " + n +
                " (op=i; domain=money)+Quantity " + n + " (op=i; domain=number)>}";
    }
    return text + ">";
}

msgstruct::MessageStructure must_parse(const std::string& text) { return msgstruct::parse(text).value(); }

void BM_ParseOrder(benchmark::State& state) {
    auto text = order_text();
    for (auto _ : state) benchmark::DoNotOptimize(msgstruct::parse(text));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ParseOrder);

void BM_ParseWide(benchmark::State& state) {
    auto text = wide_order(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(msgstruct::parse(text));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ParseWide)->Range(8, 512);

void BM_PrintTabular(benchmark::State& state) {
    auto ms = must_parse(order_text());
    for (auto _ : state) benchmark::DoNotOptimize(msgstruct::print(ms, msgstruct::PrintStyle::Tabular));
}
BENCHMARK(BM_PrintTabular);

void BM_Canonicalize(benchmark::State& state) {
    auto ms = must_parse(wide_order(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(msgstruct::canonicalize(ms));
}
BENCHMARK(BM_Canonicalize)->Range(8, 512);

void BM_Lint(benchmark::State& state) {
    auto ms = must_parse(wide_order(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(msgstruct::lint(ms, msgstruct::Phase::Analysis));
}
BENCHMARK(BM_Lint)->Range(8, 512);

void BM_DeriveAndIntegrate(benchmark::State& state) {
    auto ms = must_parse(wide_order(static_cast<int>(state.range(0))));
    msgstruct::CommunicativeEvent ev{"E1", "order", 1, ms};
    for (auto _ : state) {
        auto view = msgstruct::derive_view(ev).value();
        benchmark::DoNotOptimize(msgstruct::integrate({view, view}));
    }
}
BENCHMARK(BM_DeriveAndIntegrate)->Range(8, 512);

void BM_Fragment(benchmark::State& state) {
    auto ms = must_parse(wide_order(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(msgstruct::fragment_1nf(ms));
}
BENCHMARK(BM_Fragment)->Range(8, 512);

}  // namespace

BENCHMARK_MAIN();
