use alloc::string::String;

/// Failures of world operations. The `Display` text is what the agent reads.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WorldError {
    #[error("The {0} cannot be moved.")]
    NotPortable(String),
    #[error("The {0} is closed.")]
    ContainerClosed(String),
    #[error("You do not see that here.")]
    NotVisible,
    #[error("The {0} is not a container.")]
    NotAContainer(String),
    #[error("The {0} can only be held in a container that holds liquids.")]
    NeedsVessel(String),
    #[error("You cannot put the {0} inside itself.")]
    WouldCycle(String),
    #[error("The {0} is already there.")]
    AlreadyThere(String),
    #[error("The {0} is already open.")]
    AlreadyOpen(String),
    #[error("The {0} is already closed.")]
    AlreadyClosed(String),
    #[error("The {0} cannot be opened or closed.")]
    NotCloseable(String),
    #[error("That terminal is already connected to something.")]
    TerminalOccupied,
    #[error("The {0} has no such terminal.")]
    NoSuchTerminal(String),
    #[error("The {0} has no free terminal.")]
    NoFreeTerminal(String),
    #[error("The {0} is not connected to anything.")]
    NotConnected(String),
    #[error("You cannot connect the {0} to itself.")]
    SelfConnection(String),
    #[error("The {0} is not something that can be activated.")]
    NotADevice(String),
    #[error("{0}")]
    ConditionUnmet(String),
    #[error("The {0} is already on.")]
    AlreadyActive(String),
    #[error("The {0} is already off.")]
    AlreadyInactive(String),
    #[error("I'm not sure how to use those together.")]
    NoUseDefined,
    #[error("Mixing the {0} does not produce anything new.")]
    NoReaction(String),
    #[error("There is no liquid to pour from the {0}.")]
    NoLiquid(String),
    #[error("The {0} is not edible.")]
    NotEdible(String),
    #[error("The {0} cannot be flushed.")]
    NotFlushable(String),
    #[error("There is nothing written on the {0}.")]
    NotReadable(String),
    #[error("The {0} is not in your inventory.")]
    NotInInventory(String),
    #[error("You cannot go to the {0} from here.")]
    NotAdjacent(String),
    #[error("The door to the {0} is closed.")]
    DoorClosed(String),
    #[error("You are already in the {0}.")]
    AlreadyHere(String),
    #[error("Teleporting is not available in this mode.")]
    TeleportDisabled,
    #[error("You cannot focus on that.")]
    NotFocusable,
    #[error("Unknown object id {0}.")]
    UnknownObject(u32),
}
