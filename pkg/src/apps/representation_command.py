def register(subparsers, parents):
    parser = subparsers.add_parser("rep", parents=parents, help="table entries for one partition")
    parser.add_argument("--arity", type=int, choices=(5, 7), required=True)
    parser.add_argument("--partition", required=True, help="parts such as 4,2,1")
    parser.set_defaults(command="rep", handler=handle)


def handle(args) -> dict:
    return {"arity": args.arity, "partition": args.partition}
