#include <iostream>

#include "ppclab/verify.hpp"

int main() {
    return ppclab::print_acceptance_report(std::cout) ? 0 : 1;
}
