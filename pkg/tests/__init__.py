# flowhom test suite
