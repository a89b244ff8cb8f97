// placeholder; full CLI arrives with the report module
#include <perfiso/cyclo.hpp>
#include <iostream>

int main() {
    std::cout << perfiso::CycNum::parse("E(3)+E(3)^2").str() << "\n";
    return 0;
}
