#include "maxlf/harness.hpp"
#include <cstdio>
int main() { std::printf("maxlf cli placeholder\n"); return 0; }
