# anchors sys.path so sibling helper modules import inside the test run
