#include <doctest.h>

#include <random>

#include "clmodel/bundled.hpp"
#include "clmodel/errors.hpp"
#include "clmodel/kernel.hpp"
#include "generators.hpp"

using namespace clmodel;

TEST_SUITE("kernel") {

TEST_CASE("builtin definitions") {
  KernelDescription triad = builtin::triad_kernel();
  CHECK(triad.load_streams == 2);
  CHECK(triad.store_streams == 1);
  CHECK(triad.flops_per_iteration() == 2);
  CHECK(builtin::by_name("copy")->load_streams == 1);
  CHECK(builtin::by_name("COPY").has_value());
  CHECK(!builtin::by_name("dgemm").has_value());
  CHECK(builtin::all().size() == 4);
}

TEST_CASE("iterations per cacheline") {
  MachineDescription core2 = bundled::core2();
  CHECK(iterations_per_cacheline(builtin::triad_kernel(), core2) == 8);

  KernelDescription whole_line = builtin::load_kernel();
  whole_line.element_bytes = 64;
  CHECK(iterations_per_cacheline(whole_line, core2) == 1);
  whole_line.element_bytes = 4;
  CHECK(iterations_per_cacheline(whole_line, core2) == 16);
  whole_line.element_bytes = 12;  // does not divide 64
  CHECK_THROWS_AS(iterations_per_cacheline(whole_line, core2), ValidationError);
}

TEST_CASE("L1 cycles per cacheline reproduce the reference column") {
  for (const MachineDescription& m : {bundled::core2(), bundled::nehalem()}) {
    CHECK(l1_cycles_per_cl(builtin::load_kernel(), m) == Rat(4));
    CHECK(l1_cycles_per_cl(builtin::store_kernel(), m) == Rat(4));
    CHECK(l1_cycles_per_cl(builtin::copy_kernel(), m) == Rat(4));
    CHECK(l1_cycles_per_cl(builtin::triad_kernel(), m) == Rat(8));
  }
}

TEST_CASE("non-concurrent ports add instead of overlapping") {
  MachineDescription m = bundled::core2();
  m.l1_concurrent_load_store = false;
  CHECK(l1_cycles_per_cl(builtin::copy_kernel(), m) == Rat(8));
}

TEST_CASE("override bypasses the port formula") {
  KernelDescription k = builtin::triad_kernel();
  k.l1_cycles_override = Rat(24);
  CHECK(l1_cycles_per_cl(k, bundled::nehalem()) == Rat(24));
}

TEST_CASE("l1 cycles are monotone in stream counts") {
  std::mt19937 rng(7);
  for (int i = 0; i < 150; ++i) {
    MachineDescription m = testgen::random_machine(rng);
    KernelDescription k = testgen::random_kernel(rng);
    Rat base = l1_cycles_per_cl(k, m);
    KernelDescription more_loads = k;
    more_loads.load_streams++;
    KernelDescription more_stores = k;
    more_stores.store_streams++;
    CHECK(l1_cycles_per_cl(more_loads, m) >= base);
    CHECK(l1_cycles_per_cl(more_stores, m) >= base);
  }
}

TEST_CASE("kernel documents") {
  KernelDescription k = load_kernel(
      R"({"name":"jacobi-body","load_streams":5,"store_streams":1,"adds":6,"mults":2,)"
      R"("element_bytes":8,"l1_cycles_override":24})");
  CHECK(k.flops_per_iteration() == 8);
  CHECK(*k.l1_cycles_override == Rat(24));

  CHECK_THROWS_AS(load_kernel(R"({"name":"x","load_streams":0,"store_streams":0,"adds":0,"mults":0,"element_bytes":8})"),
                  ValidationError);
  CHECK_THROWS_AS(load_kernel(R"({"name":"x","load_streams":1,"store_streams":0,"adds":0,"mults":0,"element_bytes":8,"vector_width":4})"),
                  ParseError);
}

}  // TEST_SUITE
