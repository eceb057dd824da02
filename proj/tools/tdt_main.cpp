#include "tdt/app.hpp"

int main(int argc, char** argv) { return tdt::app::run(argc, argv); }
